//! Constructions: cycles, scalings, l1-products, binary and normed
//! Z2-spaces, rainbow duplicates and their factorization, the hexagon and
//! tetrahedron tables, and the weak-amalgamation obstruction gadget.

use crate::canon::equivalent;
use crate::error::{Error, Result};
use crate::homogeneity::{automorphisms, is_k_homogeneous};
use crate::perm::{close, PermGroup, Permutation, DEFAULT_ORDER_CAP};
use crate::space::ColoredSpace;
use crate::structure::{
    aut_star, is_isosceles_free, isosceles_generated_components, NormTable,
};
use serde::Serialize;

const MAX_POINTS: usize = 64;

/// The n-point circle with graph distance; palette `{0..⌊n/2⌋}`.
pub fn cycle(n: usize) -> ColoredSpace {
    assert!(n >= 1, "cycle needs at least one point");
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
    ColoredSpace::from_metric(&reals, 0.0).expect("graph metric is valid")
}

/// Multiplies the palette by a positive factor; colors unchanged.
pub fn scale(space: &ColoredSpace, factor: f64) -> Result<ColoredSpace> {
    if factor <= 0.0 {
        return Err(Error::PreconditionFailed("scale factor must be positive".into()));
    }
    let palette = space.require_palette()?;
    space.with_palette(palette.iter().map(|v| v * factor).collect())
}

/// l1-product: distances add coordinatewise. Requires the sum map on the
/// two palettes to be injective, so colors of the product match distance
/// pairs one-to-one.
pub fn l1_product(x: &ColoredSpace, y: &ColoredSpace) -> Result<ColoredSpace> {
    let px = x.require_palette()?;
    let py = y.require_palette()?;
    let mut sums: Vec<(f64, usize, usize)> = Vec::with_capacity(px.len() * py.len());
    for (i, &a) in px.iter().enumerate() {
        for (j, &b) in py.iter().enumerate() {
            sums.push((a + b, i, j));
        }
    }
    sums.sort_by(|u, v| u.0.partial_cmp(&v.0).unwrap());
    for w in sums.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::SumNotInjective {
                x0: px[w[0].1],
                y0: py[w[0].2],
                x1: px[w[1].1],
                y1: py[w[1].2],
            });
        }
    }
    let (nx, ny) = (x.n(), y.n());
    let n = nx * ny;
    let reals: Vec<Vec<f64>> = (0..n)
        .map(|p| {
            let (i1, j1) = (p / ny, p % ny);
            (0..n)
                .map(|q| {
                    let (i2, j2) = (q / ny, q % ny);
                    x.dist(i1, i2) + y.dist(j1, j2)
                })
                .collect()
        })
        .collect();
    let product = ColoredSpace::from_metric(&reals, 0.0)?;
    if n > 0 && product.delta() != x.delta() * y.delta() {
        return Err(Error::InternalInvariantViolation(
            "product distance count is not the product of the factors".into(),
        ));
    }
    Ok(product)
}

/// 2^m points with `d(x, y) = x xor y` read as an integer.
pub fn binary_space(m: usize) -> Result<ColoredSpace> {
    if m > 10 {
        return Err(Error::DegreeTooLarge { n: m, max: 10 });
    }
    let n = 1usize << m;
    let matrix: Vec<Vec<u16>> = (0..n)
        .map(|x| (0..n).map(|y| (x ^ y) as u16).collect())
        .collect();
    let palette: Vec<f64> = (0..n).map(|v| v as f64).collect();
    ColoredSpace::new(matrix, Some(palette))
}

/// The space on bitmasks with `d(x, y) = norm[x xor y]`; verified
/// homogeneous isosceles-free.
pub fn boolean_space(table: &NormTable) -> Result<ColoredSpace> {
    if !table.is_injective() {
        return Err(Error::NormNotInjective);
    }
    if !table.satisfies_triangle() {
        return Err(Error::TriangleViolation(0, 0, 0));
    }
    let n = 1usize << table.m;
    let mut sorted: Vec<f64> = table.norm.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rank = |v: f64| sorted.binary_search_by(|w| w.partial_cmp(&v).unwrap()).unwrap();
    let matrix: Vec<Vec<u16>> = (0..n)
        .map(|x| (0..n).map(|y| rank(table.norm[x ^ y]) as u16).collect())
        .collect();
    let space = ColoredSpace::new(matrix, Some(sorted))?;
    if !is_isosceles_free(&space) || !is_k_homogeneous(&space, 1, DEFAULT_ORDER_CAP)? {
        return Err(Error::InternalInvariantViolation(
            "norm table did not produce a homogeneous isosceles-free space".into(),
        ));
    }
    Ok(space)
}

/// Discrete space: all positive distances equal 1.
pub fn discrete(n: usize) -> ColoredSpace {
    let matrix: Vec<Vec<u16>> = (0..n)
        .map(|i| (0..n).map(|j| u16::from(i != j)).collect())
        .collect();
    let palette = if n > 1 { vec![0.0, 1.0] } else { vec![0.0; n.min(1)] };
    ColoredSpace::new(matrix, Some(palette)).expect("discrete metric is valid")
}

/// `scale(cycle(2k+1), 2^m) ×₁ binary_space(m)`: 2^m(2k+1) points and
/// 2^m(k+1) distances.
pub fn b_space(m: usize, k: usize) -> Result<ColoredSpace> {
    let n = (1usize << m) * (2 * k + 1);
    if n > MAX_POINTS {
        return Err(Error::DegreeTooLarge { n, max: MAX_POINTS });
    }
    let left = scale(&cycle(2 * k + 1), (1usize << m) as f64)?;
    let right = binary_space(m)?;
    let product = l1_product(&left, &right)?;
    let expected = (1usize << m) * (k + 1);
    if product.delta() != expected {
        return Err(Error::InternalInvariantViolation(format!(
            "product space has {} distances, expected {expected}",
            product.delta()
        )));
    }
    Ok(product)
}

/// Parameters for a rainbow duplicate: an Abelian subgroup acting uniquely
/// transitively, an involution inverting it by conjugation, and an
/// injective assignment of fresh cross distances, one per subgroup element
/// (aligned with `group.elements()`).
#[derive(Debug, Clone)]
pub struct RainbowParams {
    pub group: PermGroup,
    pub involution: Permutation,
    pub cross: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RainbowOutcome {
    #[serde(skip)]
    pub space: ColoredSpace,
    /// Whether the cross distances satisfy the sufficient spread condition
    /// (pairwise within the least positive distance, all at least the
    /// diameter); the triangle inequality is checked directly either way.
    pub spread_condition: bool,
    pub aut_order: usize,
}

fn check_rainbow_params(x: &ColoredSpace, params: &RainbowParams) -> Result<()> {
    let n = x.n();
    let h = &params.group;
    if h.degree() != n {
        return Err(Error::DegreeMismatch);
    }
    for el in h.elements() {
        if !preserves_colors(x, el) {
            return Err(Error::PreconditionFailed(
                "subgroup element is not an automorphism".into(),
            ));
        }
    }
    if !h.is_abelian() {
        return Err(Error::PreconditionFailed("subgroup is not Abelian".into()));
    }
    if !h.is_uniquely_transitive() {
        return Err(Error::PreconditionFailed(
            "subgroup is not uniquely transitive".into(),
        ));
    }
    let g = &params.involution;
    if g.degree() != n || !preserves_colors(x, g) {
        return Err(Error::PreconditionFailed(
            "involution is not an automorphism".into(),
        ));
    }
    if !g.compose(g).is_identity() {
        return Err(Error::PreconditionFailed("involution does not square to identity".into()));
    }
    let ginv = g.inverse();
    for el in h.elements() {
        if g.compose(el).compose(&ginv) != el.inverse() {
            return Err(Error::PreconditionFailed(
                "conjugation by the involution does not invert the subgroup".into(),
            ));
        }
    }
    if params.cross.len() != h.order() {
        return Err(Error::PreconditionFailed(
            "one cross distance per subgroup element is required".into(),
        ));
    }
    let mut sorted = params.cross.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::PreconditionFailed("cross distances are not injective".into()));
    }
    if sorted.first().map_or(false, |&v| v <= 0.0) {
        return Err(Error::PreconditionFailed("cross distances must be positive".into()));
    }
    let palette = x.require_palette()?;
    if params
        .cross
        .iter()
        .any(|r| palette.iter().any(|p| p == r))
    {
        return Err(Error::PreconditionFailed(
            "cross distances must avoid the existing distances".into(),
        ));
    }
    Ok(())
}

fn preserves_colors(space: &ColoredSpace, p: &Permutation) -> bool {
    let n = space.n();
    (0..n).all(|i| (i..n).all(|j| space.color(i, j) == space.color(p.apply(i), p.apply(j))))
}

/// Two copies of the base joined by cross distances indexed by the acting
/// subgroup. The automorphism count of the result is verified to be twice
/// the subgroup order.
pub fn rainbow_duplicate(x: &ColoredSpace, params: &RainbowParams) -> Result<RainbowOutcome> {
    if x.n() == 0 {
        return Err(Error::EmptySpace);
    }
    check_rainbow_params(x, params)?;
    let n = x.n();
    let h = &params.group;
    // h_x^y is the unique element with h(x) = y.
    let mut cross_value = vec![vec![0.0f64; n]; n];
    for (idx, el) in h.elements().iter().enumerate() {
        for p in 0..n {
            cross_value[p][el.apply(p)] = params.cross[idx];
        }
    }
    let total = 2 * n;
    let reals: Vec<Vec<f64>> = (0..total)
        .map(|p| {
            (0..total)
                .map(|q| {
                    let (xp, cp) = (p % n, p / n);
                    let (xq, cq) = (q % n, q / n);
                    if cp == cq {
                        x.dist(xp, xq)
                    } else if cp == 0 {
                        cross_value[xp][xq]
                    } else {
                        cross_value[xq][xp]
                    }
                })
                .collect()
        })
        .collect();
    let space = ColoredSpace::from_metric(&reals, 0.0)?;
    if space.delta() != x.delta() + h.order() {
        return Err(Error::InternalInvariantViolation(
            "duplicate distance count is off".into(),
        ));
    }
    let aut_order = automorphisms(&space, DEFAULT_ORDER_CAP)?.order();
    if aut_order != 2 * h.order() {
        return Err(Error::InternalInvariantViolation(format!(
            "duplicate automorphism count {aut_order} is not twice the subgroup order"
        )));
    }
    let palette = x.require_palette()?;
    let min_positive = palette.get(1).copied().unwrap_or(f64::INFINITY);
    let max_dist = palette.last().copied().unwrap_or(0.0);
    let spread_condition = params.cross.iter().all(|&r| r >= max_dist)
        && params
            .cross
            .iter()
            .all(|&r| params.cross.iter().all(|&s| (r - s).abs() <= min_positive));
    Ok(RainbowOutcome {
        space,
        spread_condition,
        aut_order,
    })
}

/// Fresh cross distances `max palette + 1 + i/|H|` in subgroup element
/// order; pairwise within 1 of each other and above the diameter.
pub fn default_r(x: &ColoredSpace, h: &PermGroup) -> Result<Vec<f64>> {
    let palette = x.require_palette()?;
    let dmax = palette.last().copied().unwrap_or(0.0);
    let order = h.order() as f64;
    Ok((0..h.order())
        .map(|i| dmax + 1.0 + i as f64 / order)
        .collect())
}

/// Rotation subgroup of the n-cycle, elements sorted as Φ_0, Φ_1, ...
fn cycle_rotations(n: usize) -> PermGroup {
    if n == 1 {
        return PermGroup::trivial(1);
    }
    let rotation = Permutation::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect())
        .expect("rotation is a bijection");
    close(n, &[rotation], n).expect("rotations close at order n")
}

fn cycle_reflection(n: usize) -> Permutation {
    Permutation::from_images((0..n).map(|i| ((n - i) % n) as u16).collect())
        .expect("reflection is a bijection")
}

/// Rainbow duplicate of the n-cycle over its rotations; 2n points and
/// `⌊n/2⌋ + 1 + n` distances.
pub fn d_space(n: usize) -> Result<ColoredSpace> {
    if n < 1 {
        return Err(Error::PreconditionFailed("cycle needs at least one point".into()));
    }
    if 2 * n > MAX_POINTS {
        return Err(Error::DegreeTooLarge { n: 2 * n, max: MAX_POINTS });
    }
    let base = cycle(n);
    let rotations = cycle_rotations(n);
    let cross = default_r(&base, &rotations)?;
    let params = RainbowParams {
        group: rotations,
        involution: cycle_reflection(n),
        cross,
    };
    let outcome = rainbow_duplicate(&base, &params)?;
    let expected = n / 2 + 1 + n;
    if outcome.space.delta() != expected {
        return Err(Error::InternalInvariantViolation(format!(
            "expected {expected} distances, got {}",
            outcome.space.delta()
        )));
    }
    Ok(outcome.space)
}

/// Rainbow duplicate of `b_space(m, k)` over rotations × translations;
/// `2^(m+1)(2k+1)` points and `2^m(3k+2)` distances.
pub fn e_space(m: usize, k: usize) -> Result<ColoredSpace> {
    let base_n = (1usize << m) * (2 * k + 1);
    if 2 * base_n > MAX_POINTS {
        return Err(Error::DegreeTooLarge { n: 2 * base_n, max: MAX_POINTS });
    }
    let base = b_space(m, k)?;
    let nc = 2 * k + 1;
    let mask_count = 1usize << m;
    // Point (i, v) of the product sits at index i * 2^m + v.
    let rotate = Permutation::from_images(
        (0..base_n)
            .map(|p| {
                let (i, v) = (p / mask_count, p % mask_count);
                (((i + 1) % nc) * mask_count + v) as u16
            })
            .collect(),
    )
    .expect("rotation is a bijection");
    let mut gens = vec![rotate];
    for bit in 0..m {
        gens.push(
            Permutation::from_images(
                (0..base_n)
                    .map(|p| {
                        let (i, v) = (p / mask_count, p % mask_count);
                        (i * mask_count + (v ^ (1 << bit))) as u16
                    })
                    .collect(),
            )
            .expect("translation is a bijection"),
        );
    }
    let h = close(base_n, &gens, base_n)?;
    let reflect = Permutation::from_images(
        (0..base_n)
            .map(|p| {
                let (i, v) = (p / mask_count, p % mask_count);
                (((nc - i) % nc) * mask_count + v) as u16
            })
            .collect(),
    )
    .expect("reflection is a bijection");
    let cross = default_r(&base, &h)?;
    let params = RainbowParams {
        group: h,
        involution: reflect,
        cross,
    };
    let outcome = rainbow_duplicate(&base, &params)?;
    let expected = (1usize << m) * (3 * k + 2);
    if outcome.space.delta() != expected {
        return Err(Error::InternalInvariantViolation(format!(
            "expected {expected} distances, got {}",
            outcome.space.delta()
        )));
    }
    Ok(outcome.space)
}

/// Rainbow duplicate of the discrete 2^n-point space over the xor
/// translations; Boolean but not isosceles-free for n >= 2.
pub fn discrete_boolean_duplicate(n: usize) -> Result<ColoredSpace> {
    if n > 4 {
        return Err(Error::DegreeTooLarge { n, max: 4 });
    }
    let size = 1usize << n;
    let base = discrete(size);
    let mut gens = Vec::new();
    for bit in 0..n {
        gens.push(
            Permutation::from_images((0..size).map(|v| (v ^ (1 << bit)) as u16).collect())
                .expect("translation is a bijection"),
        );
    }
    let h = close(size, &gens, size)?;
    let cross: Vec<f64> = (0..size)
        .map(|i| 1.0 + (i + 1) as f64 / (size + 1) as f64)
        .collect();
    let params = RainbowParams {
        group: h,
        involution: Permutation::identity(size),
        cross,
    };
    let outcome = rainbow_duplicate(&base, &params)?;
    if n >= 2 && is_isosceles_free(&outcome.space) {
        return Err(Error::InternalInvariantViolation(
            "discrete duplicate should not be isosceles-free".into(),
        ));
    }
    if !crate::structure::is_boolean_space(&outcome.space, DEFAULT_ORDER_CAP)? {
        return Err(Error::InternalInvariantViolation(
            "discrete duplicate should be Boolean".into(),
        ));
    }
    Ok(outcome.space)
}

/// A recovered rainbow factorization: base space, parameters, and the
/// rebuilt duplicate (isometric to the input).
pub struct RainbowFactorization {
    pub base: ColoredSpace,
    pub params: RainbowParams,
    pub rebuilt: ColoredSpace,
}

/// Recovers rainbow parameters from a 1-homogeneous space with exactly two
/// isosceles-generated components, or returns None.
pub fn rainbow_factorization(
    y: &ColoredSpace,
    cap: usize,
) -> Result<Option<RainbowFactorization>> {
    if !is_k_homogeneous(y, 1, cap)? {
        return Err(Error::NotHomogeneous(1));
    }
    let y_owned;
    let y = if y.palette().is_some() {
        y
    } else {
        y_owned = y.realize_metric(1.0);
        &y_owned
    };
    let decomposition = isosceles_generated_components(y, cap)?;
    if decomposition.blocks.len() != 2 {
        return Ok(None);
    }
    let c0 = decomposition.blocks[0].clone();
    let c1 = decomposition.blocks[1].clone();
    let n = c0.len();
    let q_color = y.color(c0[0], c1[0]);

    // The swap along the singleton cross distance q.
    let mut swap = vec![usize::MAX; y.n()];
    for p in 0..y.n() {
        let mut partner = None;
        for q in 0..y.n() {
            if y.color(p, q) == q_color {
                if partner.is_some() {
                    return Err(Error::InternalInvariantViolation(
                        "cross distance is not singleton".into(),
                    ));
                }
                partner = Some(q);
            }
        }
        swap[p] = partner.ok_or_else(|| {
            Error::InternalInvariantViolation("cross distance misses a point".into())
        })?;
    }
    for p in 0..y.n() {
        if swap[swap[p]] != p {
            return Err(Error::InternalInvariantViolation("swap is not an involution".into()));
        }
    }

    let base = y.subspace(&c0)?;
    let pos_in_c0 = |p: usize| c0.iter().position(|&q| q == p);

    // Restrictions of the block-fixing automorphisms form the subgroup.
    let star = aut_star(y, &decomposition, cap)?;
    let mut restricted: Vec<(Permutation, Permutation)> = Vec::new();
    for el in star.elements() {
        let images: Vec<u16> = c0
            .iter()
            .map(|&p| pos_in_c0(el.apply(p)).expect("block-fixing image stays in block") as u16)
            .collect();
        restricted.push((Permutation::from_images(images)?, el.clone()));
    }
    restricted.sort_by(|a, b| a.0.cmp(&b.0));
    let h_elements: Vec<Permutation> = restricted.iter().map(|(r, _)| r.clone()).collect();
    let h = PermGroup::from_elements(n, h_elements)?;

    // Cross distances r(h) = d(x, swap(h(x))), independent of x.
    let mut cross = Vec::with_capacity(h.order());
    for el in h.elements() {
        let (_, full) = restricted
            .iter()
            .find(|(r, _)| r == el)
            .expect("restriction found");
        let value = y.dist(c0[0], swap[full.apply(c0[0])]);
        for &x in &c0 {
            if (y.dist(x, swap[full.apply(x)]) - value).abs() > 1e-12 {
                return Err(Error::InternalInvariantViolation(
                    "cross distance depends on the base point".into(),
                ));
            }
        }
        cross.push(value);
    }

    // An automorphism swapping the blocks composed with the q-swap gives
    // the inverting involution on the base.
    let aut = automorphisms(y, cap)?;
    let swapper = aut
        .elements()
        .iter()
        .find(|g| pos_in_c0(g.apply(c0[0])).is_none())
        .ok_or_else(|| {
            Error::InternalInvariantViolation("no automorphism swaps the blocks".into())
        })?;
    let involution_images: Vec<u16> = c0
        .iter()
        .map(|&p| pos_in_c0(swap[swapper.apply(p)]).expect("lands back in block") as u16)
        .collect();
    let involution = Permutation::from_images(involution_images)?;

    let params = RainbowParams {
        group: h,
        involution,
        cross,
    };
    let outcome = rainbow_duplicate(&base, &params)?;
    if !equivalent(&outcome.space.without_palette(), &y.without_palette()) {
        return Err(Error::InternalInvariantViolation(
            "rebuilt duplicate is not isometric to the input".into(),
        ));
    }
    Ok(Some(RainbowFactorization {
        base,
        params,
        rebuilt: outcome.space,
    }))
}

/// The six-point isosceles-free table over five distances in [1, 2];
/// verified isosceles-free and not 1-homogeneous.
pub fn hexagon(d1: f64, d2: f64, d3: f64, d4: f64, d5: f64) -> Result<ColoredSpace> {
    let d = [d1, d2, d3, d4, d5];
    let mut sorted = d;
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DistancesNotDistinct);
    }
    if sorted[0] < 1.0 || sorted[4] > 2.0 {
        return Err(Error::PreconditionFailed("distances must lie in [1, 2]".into()));
    }
    let (a, b, c, e, f) = (d1, d2, d3, d4, d5);
    let reals = vec![
        vec![0.0, a, b, c, e, f],
        vec![a, 0.0, f, e, b, c],
        vec![b, f, 0.0, a, c, e],
        vec![c, e, a, 0.0, f, b],
        vec![e, b, c, f, 0.0, a],
        vec![f, c, e, b, a, 0.0],
    ];
    let space = ColoredSpace::from_metric(&reals, 0.0)?;
    if !is_isosceles_free(&space) {
        return Err(Error::InternalInvariantViolation("hexagon must be isosceles-free".into()));
    }
    if is_k_homogeneous(&space, 1, DEFAULT_ORDER_CAP)? {
        return Err(Error::InternalInvariantViolation(
            "hexagon must not be 1-homogeneous".into(),
        ));
    }
    Ok(space)
}

/// Four points split into three perfect matchings with distances a, b, c;
/// verified homogeneous isosceles-free.
pub fn tetrahedron(a: f64, b: f64, c: f64) -> Result<ColoredSpace> {
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        return Err(Error::NotATriangle);
    }
    if a > b + c || b > a + c || c > a + b {
        return Err(Error::NotATriangle);
    }
    if a == b || b == c || a == c {
        return Err(Error::DistancesNotDistinct);
    }
    let reals = vec![
        vec![0.0, a, b, c],
        vec![a, 0.0, c, b],
        vec![b, c, 0.0, a],
        vec![c, b, a, 0.0],
    ];
    let space = ColoredSpace::from_metric(&reals, 0.0)?;
    if !is_isosceles_free(&space) || !is_k_homogeneous(&space, 1, DEFAULT_ORDER_CAP)? {
        return Err(Error::InternalInvariantViolation(
            "tetrahedron must be homogeneous isosceles-free".into(),
        ));
    }
    Ok(space)
}

/// The two one-point extensions that block weak amalgamation over a base
/// with two marked points, plus the forced-isosceles obstruction data.
#[derive(Debug, Clone)]
pub struct WapGadget {
    pub x_space: ColoredSpace,
    pub y_space: ColoredSpace,
    pub r0: f64,
    pub eps: f64,
    pub r1: f64,
    /// Distance from the first marked point to either new point; equal in
    /// both extensions, while the new points stay distinct in any amalgam.
    pub common_distance: f64,
    pub obstruction_verified: bool,
}

pub fn wap_gadget(base: &ColoredSpace, p0: usize, p1: usize) -> Result<WapGadget> {
    let n = base.n();
    if p0 >= n || p1 >= n {
        return Err(Error::PointOutOfRange(p0.max(p1)));
    }
    if p0 == p1 {
        return Err(Error::PreconditionFailed("marked points must be distinct".into()));
    }
    if !is_isosceles_free(base) {
        return Err(Error::PreconditionFailed("base must be isosceles-free".into()));
    }
    base.require_palette()?;

    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            diameter = diameter.max(base.dist(i, j));
        }
    }
    let r0 = diameter + 1.0;
    let mut min_gap = f64::INFINITY;
    for a in 0..n {
        for b in 0..n {
            let gap = (base.dist(a, p0) - base.dist(b, p1)).abs();
            if gap > 0.0 {
                min_gap = min_gap.min(gap);
            }
        }
    }
    if !min_gap.is_finite() {
        return Err(Error::PreconditionFailed(
            "no positive distance gap between the marked rows".into(),
        ));
    }
    let eps = min_gap / 2.0;
    let r1 = r0 - eps;

    let extend = |dist_to_new: &dyn Fn(usize) -> f64| -> Result<ColoredSpace> {
        let total = n + 1;
        let reals: Vec<Vec<f64>> = (0..total)
            .map(|i| {
                (0..total)
                    .map(|j| {
                        if i < n && j < n {
                            base.dist(i, j)
                        } else if i == j {
                            0.0
                        } else {
                            dist_to_new(i.min(j))
                        }
                    })
                    .collect()
            })
            .collect();
        ColoredSpace::from_metric(&reals, 0.0)
    };
    let x_space = extend(&|a| base.dist(a, p0) + r0)?;
    let y_space = extend(&|a| (base.dist(a, p0) + r0).min(base.dist(a, p1) + r1))?;
    if !is_isosceles_free(&x_space) || !is_isosceles_free(&y_space) {
        return Err(Error::InternalInvariantViolation(
            "one-point extensions must stay isosceles-free".into(),
        ));
    }

    // In any amalgam over the marked points, the two new points sit at the
    // same distance from p0 yet differ (their distances to p1 disagree),
    // forcing an isosceles triangle.
    let dx0 = x_space.dist(p0, n);
    let dy0 = y_space.dist(p0, n);
    let dx1 = x_space.dist(p1, n);
    let dy1 = y_space.dist(p1, n);
    let obstruction_verified = dx0 == dy0 && dx1 != dy1;
    if !obstruction_verified {
        return Err(Error::InternalInvariantViolation(
            "obstruction certificate failed".into(),
        ));
    }
    Ok(WapGadget {
        x_space,
        y_space,
        r0,
        eps,
        r1,
        common_distance: dx0,
        obstruction_verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ORDER_CAP as CAP;

    #[test]
    fn cycle_examples() {
        assert_eq!(cycle(4).delta(), 3);
        assert_eq!(cycle(1).n(), 1);
        let c7 = cycle(7);
        assert_eq!(c7.delta(), 4);
        assert!(crate::homogeneity::is_ultrahomogeneous(&c7, CAP).unwrap());
    }

    #[test]
    fn cycle_distance_counts_up_to_twelve() {
        for n in 1..=12 {
            assert_eq!(cycle(n).delta(), n / 2 + 1, "C_{n}");
        }
    }

    #[test]
    fn scale_examples() {
        let doubled = scale(&cycle(3), 2.0).unwrap();
        assert_eq!(doubled.palette().unwrap(), &[0.0, 2.0]);
        let same = scale(&cycle(5), 1.0).unwrap();
        assert_eq!(same, cycle(5));
        let quad = scale(&cycle(5), 4.0).unwrap();
        assert_eq!(quad.palette().unwrap(), &[0.0, 4.0, 8.0]);
        assert!(matches!(
            scale(&cycle(3).without_palette(), 2.0),
            Err(Error::NoPalette)
        ));
    }

    #[test]
    fn l1_product_examples() {
        let b11 = l1_product(&scale(&cycle(3), 2.0).unwrap(), &binary_space(1).unwrap()).unwrap();
        assert_eq!(b11.n(), 6);
        assert_eq!(b11.delta(), 4);

        let single = ColoredSpace::new(vec![vec![0]], Some(vec![0.0])).unwrap();
        let copy = l1_product(&cycle(5), &single).unwrap();
        assert!(equivalent(&copy.without_palette(), &cycle(5).without_palette()));

        assert!(matches!(
            l1_product(&cycle(3), &cycle(3)),
            Err(Error::SumNotInjective { .. })
        ));
    }

    #[test]
    fn binary_space_examples() {
        let x2 = binary_space(2).unwrap();
        assert_eq!(x2.delta(), 4);
        assert_eq!(x2.palette().unwrap(), &[0.0, 1.0, 2.0, 3.0]);

        assert_eq!(binary_space(0).unwrap().n(), 1);

        let x3 = binary_space(3).unwrap();
        assert_eq!(x3.delta(), 8);
        assert!(crate::homogeneity::is_ultrahomogeneous(&x3, CAP).unwrap());
    }

    #[test]
    fn binary_space_distance_sets() {
        for m in 0..=6 {
            let x = binary_space(m).unwrap();
            assert_eq!(x.delta(), 1 << m);
            let expected: Vec<f64> = (0..1usize << m).map(|v| v as f64).collect();
            assert_eq!(x.palette().unwrap(), expected.as_slice());
        }
    }

    #[test]
    fn boolean_space_examples() {
        let t = NormTable::new(2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let s = boolean_space(&t).unwrap();
        assert!(equivalent(
            &s.without_palette(),
            &binary_space(2).unwrap().without_palette()
        ));

        let t = NormTable::new(2, vec![0.0, 1.0, 1.1, 1.2]).unwrap();
        let s = boolean_space(&t).unwrap();
        assert!(equivalent(
            &s.without_palette(),
            &tetrahedron(1.0, 1.1, 1.2).unwrap().without_palette()
        ));

        let not_injective = NormTable::new(2, vec![0.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(matches!(boolean_space(&not_injective), Err(Error::NormNotInjective)));
    }

    #[test]
    fn b_space_examples() {
        let b11 = b_space(1, 1).unwrap();
        assert_eq!((b11.n(), b11.delta()), (6, 4));

        let b01 = b_space(0, 1).unwrap();
        assert!(equivalent(&b01.without_palette(), &cycle(3).without_palette()));

        let b21 = b_space(2, 1).unwrap();
        assert_eq!((b21.n(), b21.delta()), (12, 8));
    }

    #[test]
    fn rainbow_duplicate_of_single_point() {
        let single = ColoredSpace::new(vec![vec![0]], Some(vec![0.0])).unwrap();
        let params = RainbowParams {
            group: PermGroup::trivial(1),
            involution: Permutation::identity(1),
            cross: vec![1.0],
        };
        let outcome = rainbow_duplicate(&single, &params).unwrap();
        assert_eq!(outcome.space.n(), 2);
        assert_eq!(outcome.aut_order, 2);
    }

    #[test]
    fn default_r_examples() {
        let c3 = cycle(3);
        let rot = cycle_rotations(3);
        let r = default_r(&c3, &rot).unwrap();
        assert_eq!(r, vec![2.0, 2.0 + 1.0 / 3.0, 2.0 + 2.0 / 3.0]);

        let single = ColoredSpace::new(vec![vec![0]], Some(vec![0.0])).unwrap();
        let r = default_r(&single, &PermGroup::trivial(1)).unwrap();
        assert_eq!(r, vec![1.0]);

        let c5 = cycle(5);
        let r = default_r(&c5, &cycle_rotations(5)).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(|&v| (3.0..=3.8).contains(&v)));
    }

    #[test]
    fn d_space_examples() {
        let d3 = d_space(3).unwrap();
        assert_eq!((d3.n(), d3.delta()), (6, 5));

        let d5 = d_space(5).unwrap();
        assert_eq!((d5.n(), d5.delta()), (10, 8));

        let d1 = d_space(1).unwrap();
        assert_eq!(d1.n(), 2);
    }

    #[test]
    fn d_space_aut_orders() {
        for n in 1..=6 {
            let d = d_space(n).unwrap();
            let aut = automorphisms(&d, CAP).unwrap();
            assert_eq!(aut.order(), 2 * n, "D_{n}");
        }
    }

    #[test]
    fn e_space_examples() {
        let e11 = e_space(1, 1).unwrap();
        assert_eq!((e11.n(), e11.delta()), (12, 10));

        let e01 = e_space(0, 1).unwrap();
        assert_eq!((e01.n(), e01.delta()), (6, 5));

        let e12 = e_space(1, 2).unwrap();
        assert_eq!((e12.n(), e12.delta()), (20, 16));
    }

    #[test]
    fn discrete_boolean_duplicate_examples() {
        let s = discrete_boolean_duplicate(2).unwrap();
        assert_eq!(s.n(), 8);
        assert!(!is_isosceles_free(&s));

        let s0 = discrete_boolean_duplicate(0).unwrap();
        assert_eq!(s0.n(), 2);

        let s3 = discrete_boolean_duplicate(3).unwrap();
        assert_eq!(s3.n(), 16);
        assert_eq!(automorphisms(&s3, CAP).unwrap().order(), 16);
    }

    #[test]
    fn rainbow_factorization_examples() {
        let d3 = d_space(3).unwrap();
        let fact = rainbow_factorization(&d3, CAP).unwrap().expect("two components");
        assert!(equivalent(
            &fact.base.without_palette(),
            &cycle(3).without_palette()
        ));

        let x2 = binary_space(2).unwrap();
        assert!(rainbow_factorization(&x2, CAP).unwrap().is_none());

        let e11 = e_space(1, 1).unwrap();
        let fact = rainbow_factorization(&e11, CAP).unwrap().expect("two components");
        assert!(equivalent(
            &fact.base.without_palette(),
            &b_space(1, 1).unwrap().without_palette()
        ));
    }

    #[test]
    fn hexagon_examples() {
        let hex = hexagon(1.1, 1.2, 1.3, 1.4, 1.5).unwrap();
        assert_eq!(hex.delta(), 6);
        assert!(matches!(
            hexagon(1.1, 1.1, 1.3, 1.4, 1.5),
            Err(Error::DistancesNotDistinct)
        ));
    }

    #[test]
    fn tetrahedron_examples() {
        assert!(matches!(
            tetrahedron(1.0, 1.0, 1.0),
            Err(Error::DistancesNotDistinct)
        ));
        let t = tetrahedron(1.0, 1.1, 1.2).unwrap();
        assert_eq!(t.delta(), 4);
        assert!(matches!(tetrahedron(1.0, 2.0, 5.0), Err(Error::NotATriangle)));
    }

    #[test]
    fn wap_gadget_two_point_base() {
        // Formulas evaluated by hand: diameter 1 so r0 = 2, the positive
        // gaps are all 1 so eps = 0.5, r1 = 1.5, and d_Y(1, y) = 1.5.
        let base = ColoredSpace::new(vec![vec![0, 1], vec![1, 0]], Some(vec![0.0, 1.0])).unwrap();
        let gadget = wap_gadget(&base, 0, 1).unwrap();
        assert_eq!(gadget.r0, 2.0);
        assert_eq!(gadget.eps, 0.5);
        assert_eq!(gadget.r1, 1.5);
        assert_eq!(gadget.y_space.dist(1, 2), 1.5);
        assert!(gadget.obstruction_verified);
    }

    #[test]
    fn wap_gadget_tetrahedron_base() {
        let base = tetrahedron(1.0, 1.1, 1.2).unwrap();
        for (p0, p1) in [(0usize, 1usize), (1, 2), (0, 3)] {
            let gadget = wap_gadget(&base, p0, p1).unwrap();
            assert!(is_isosceles_free(&gadget.x_space));
            assert!(is_isosceles_free(&gadget.y_space));
            assert!(gadget.obstruction_verified);
        }
    }

    #[test]
    fn d_space_beats_two_homogeneous_bound() {
        // delta(D_n) > beta_{2n} for n <= 12 that is not a power of two.
        for n in 1..=12usize {
            if n.is_power_of_two() {
                continue;
            }
            if 2 * n > MAX_POINTS {
                break;
            }
            let d = d_space(n).unwrap();
            let beta = crate::search::beta(2 * n);
            assert!(d.delta() > beta, "delta(D_{n}) = {} <= beta = {beta}", d.delta());
        }
    }

    #[test]
    fn e_space_dominates_d_space() {
        // alpha_{2n} >= delta(D_n), strictly when m >= 2.
        for (m, k) in [(0usize, 1usize), (0, 2), (1, 1), (1, 2), (2, 1)] {
            let n = (1 << m) * (2 * k + 1);
            if 2 * n > MAX_POINTS {
                continue;
            }
            let alpha = e_space(m, k).unwrap().delta();
            let d = d_space(n).unwrap().delta();
            assert!(alpha >= d);
            if m >= 2 {
                assert!(alpha > d);
            }
        }
    }
}
