//! Exhaustive enumeration of small permutation groups up to conjugacy:
//! regular groups (equivalently, abstract groups of order n) by
//! backtracking over Cayley tables, and all transitive groups of degree
//! at most 8 by a breadth-first walk of the subgroup lattice.

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::space::ColoredSpace;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

pub const MAX_REGULAR_DEGREE: usize = 16;
pub const MAX_TRANSITIVE_DEGREE: usize = 8;

// ---------------------------------------------------------------------------
// Abstract groups of order n via Cayley tables.
//
// Every group of order <= 16 is solvable, so it has a chain of subgroups
// with prime indices in which each term is normal in the next (refine a
// composition series). We therefore build tables bottom-up: a group of
// order k = h * p is assembled from a known table H on labels {0..h-1}, a
// new generator g labeled h, and the coset labeling s*h + j = g^s * j.
// Unknown cells are filled by backtracking with associativity propagation;
// completed tables are verified outright and deduplicated up to
// isomorphism.
// ---------------------------------------------------------------------------

type Table = Vec<Vec<u8>>;

const UNSET: u8 = u8::MAX;

fn table_order(t: &Table, x: u8) -> usize {
    let mut k = 1;
    let mut cur = x;
    while cur != 0 {
        cur = t[cur as usize][x as usize];
        k += 1;
    }
    k
}

fn is_group_table(t: &Table) -> bool {
    let k = t.len();
    for a in 0..k {
        if t[0][a] != a as u8 || t[a][0] != a as u8 {
            return false;
        }
        let mut row = vec![false; k];
        let mut col = vec![false; k];
        for b in 0..k {
            let r = t[a][b] as usize;
            let c = t[b][a] as usize;
            if r >= k || c >= k || row[r] || col[c] {
                return false;
            }
            row[r] = true;
            col[c] = true;
        }
    }
    for a in 0..k {
        for b in 0..k {
            let ab = t[a][b] as usize;
            for c in 0..k {
                if t[ab][c] != t[a][t[b][c] as usize] {
                    return false;
                }
            }
        }
    }
    true
}

struct Partial {
    k: usize,
    cells: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
}

impl Partial {
    fn get(&self, a: usize, b: usize) -> u8 {
        self.cells[a * self.k + b]
    }

    fn set(&mut self, a: usize, b: usize, v: u8) -> bool {
        let cur = self.get(a, b);
        if cur != UNSET {
            return cur == v;
        }
        let bit = 1u32 << v;
        if self.row_used[a] & bit != 0 || self.col_used[b] & bit != 0 {
            return false;
        }
        self.cells[a * self.k + b] = v;
        self.row_used[a] |= bit;
        self.col_used[b] |= bit;
        true
    }

    /// Forward-chains associativity until a fixpoint; false on conflict.
    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            for a in 0..self.k {
                for b in 0..self.k {
                    let ab = self.get(a, b);
                    if ab == UNSET {
                        continue;
                    }
                    for c in 0..self.k {
                        let bc = self.get(b, c);
                        if bc == UNSET {
                            continue;
                        }
                        let left = self.get(ab as usize, c);
                        let right = self.get(a, bc as usize);
                        match (left == UNSET, right == UNSET) {
                            (false, false) => {
                                if left != right {
                                    return false;
                                }
                            }
                            (true, false) => {
                                if !self.set(ab as usize, c, right) {
                                    return false;
                                }
                                changed = true;
                            }
                            (false, true) => {
                                if !self.set(a, bc as usize, left) {
                                    return false;
                                }
                                changed = true;
                            }
                            (true, true) => {}
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn first_unset(&self) -> Option<(usize, usize)> {
        self.cells
            .iter()
            .position(|&v| v == UNSET)
            .map(|p| (p / self.k, p % self.k))
    }
}

fn extend_by_prime(h_table: &Table, p: usize, out: &mut Vec<Table>) {
    let h = h_table.len();
    let k = h * p;
    let mut base = Partial {
        k,
        cells: vec![UNSET; k * k],
        row_used: vec![0; k],
        col_used: vec![0; k],
    };
    // Border.
    for x in 0..k {
        if !base.set(0, x, x as u8) || !base.set(x, 0, x as u8) {
            return;
        }
    }
    // Rows of g^s * i acting on the subgroup block: (g^s i)(j) = g^s (i j).
    for s in 0..p {
        for i in 0..h {
            for j in 1..h {
                let v = (s * h + h_table[i][j] as usize) as u8;
                if !base.set(s * h + i, j, v) {
                    return;
                }
            }
        }
    }
    // Row of the generator on the cosets: g * (g^s j) = g^{s+1} j.
    for s in 0..p.saturating_sub(1) {
        for j in 0..h {
            if s * h + j == 0 {
                continue;
            }
            if !base.set(h, s * h + j, ((s + 1) * h + j) as u8) {
                return;
            }
        }
    }
    if !base.propagate() {
        return;
    }
    fn dfs(state: &Partial, out: &mut Vec<Table>) {
        match state.first_unset() {
            None => {
                let k = state.k;
                let table: Table = (0..k)
                    .map(|a| (0..k).map(|b| state.get(a, b)).collect())
                    .collect();
                if is_group_table(&table) {
                    out.push(table);
                }
            }
            Some((a, b)) => {
                for v in 0..state.k as u8 {
                    let bit = 1u32 << v;
                    if state.row_used[a] & bit != 0 || state.col_used[b] & bit != 0 {
                        continue;
                    }
                    let mut next = Partial {
                        k: state.k,
                        cells: state.cells.clone(),
                        row_used: state.row_used.clone(),
                        col_used: state.col_used.clone(),
                    };
                    if next.set(a, b, v) && next.propagate() {
                        dfs(&next, out);
                    }
                }
            }
        }
    }
    dfs(&base, out);
}

/// Greedy irredundant generating labels of a table.
fn table_generators(t: &Table) -> Vec<u8> {
    let k = t.len();
    let mut gens: Vec<u8> = Vec::new();
    let mut span = vec![false; k];
    span[0] = true;
    let mut span_list = vec![0u8];
    for x in 1..k as u8 {
        if span[x as usize] {
            continue;
        }
        gens.push(x);
        // Close the span under multiplication with the new generator set.
        let mut frontier = span_list.clone();
        frontier.push(x);
        span[x as usize] = true;
        span_list.push(x);
        while let Some(a) = frontier.pop() {
            for g in gens.iter().chain(std::iter::once(&x)) {
                for prod in [t[a as usize][*g as usize], t[*g as usize][a as usize]] {
                    if !span[prod as usize] {
                        span[prod as usize] = true;
                        span_list.push(prod);
                        frontier.push(prod);
                    }
                }
            }
        }
        if span_list.len() == k {
            break;
        }
    }
    gens
}

fn tables_isomorphic(a: &Table, b: &Table) -> bool {
    let k = a.len();
    if b.len() != k {
        return false;
    }
    let orders_a: Vec<usize> = (0..k as u8).map(|x| table_order(a, x)).collect();
    let orders_b: Vec<usize> = (0..k as u8).map(|x| table_order(b, x)).collect();
    {
        let mut sa = orders_a.clone();
        let mut sb = orders_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
    }
    let gens = table_generators(a);
    // Build every element of `a` as a product of earlier element * generator.
    let mut expr: Vec<Option<(u8, u8)>> = vec![None; k];
    let mut known = vec![false; k];
    known[0] = true;
    let mut order_list = vec![0u8];
    let mut idx = 0;
    while idx < order_list.len() {
        let e = order_list[idx];
        idx += 1;
        for &g in &gens {
            let prod = a[e as usize][g as usize];
            if !known[prod as usize] {
                known[prod as usize] = true;
                expr[prod as usize] = Some((e, g));
                order_list.push(prod);
            }
        }
    }
    // Backtrack over generator images.
    fn assign(
        a: &Table,
        b: &Table,
        gens: &[u8],
        expr: &[Option<(u8, u8)>],
        order_list: &[u8],
        orders_a: &[usize],
        orders_b: &[usize],
        images: &mut Vec<u8>,
    ) -> bool {
        if images.len() == gens.len() {
            let k = a.len();
            let mut map = vec![UNSET; k];
            map[0] = 0;
            for e in order_list {
                if let Some((prev, g)) = expr[*e as usize] {
                    let gi = gens.iter().position(|&x| x == g).unwrap();
                    map[*e as usize] = b[map[prev as usize] as usize][images[gi] as usize];
                }
            }
            let mut seen = vec![false; k];
            for &m in &map {
                if m == UNSET || seen[m as usize] {
                    return false;
                }
                seen[m as usize] = true;
            }
            for x in 0..k {
                for y in 0..k {
                    if map[a[x][y] as usize] != b[map[x] as usize][map[y] as usize] {
                        return false;
                    }
                }
            }
            return true;
        }
        let g = gens[images.len()];
        for cand in 0..a.len() as u8 {
            if orders_b[cand as usize] != orders_a[g as usize] {
                continue;
            }
            images.push(cand);
            if assign(a, b, gens, expr, order_list, orders_a, orders_b, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    let mut images = Vec::new();
    assign(a, b, &gens, &expr, &order_list, &orders_a, &orders_b, &mut images)
}

/// All groups of order n up to isomorphism, as Cayley tables.
fn abstract_groups(n: usize) -> Vec<Table> {
    let mut cache: HashMap<usize, Vec<Table>> = HashMap::new();
    cache.insert(1, vec![vec![vec![0]]]);
    let mut divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for &k in &divisors[1..] {
        let mut found: Vec<Table> = Vec::new();
        for p in 2..=k {
            if k % p != 0 || !is_prime(p) {
                continue;
            }
            let h = k / p;
            if n % h != 0 {
                continue;
            }
            let parents = cache.get(&h).cloned().unwrap_or_default();
            for parent in &parents {
                let mut raw = Vec::new();
                extend_by_prime(parent, p, &mut raw);
                for table in raw {
                    if !found.iter().any(|t| tables_isomorphic(t, &table)) {
                        found.push(table);
                    }
                }
            }
        }
        cache.insert(k, found);
    }
    cache.remove(&n).unwrap_or_default()
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).all(|d| d * d > p || p % d != 0)
}

/// The orbital coloring pattern of a transitive group, palette-free;
/// used to sort enumeration output deterministically.
fn orbital_pattern(group: &PermGroup) -> ColoredSpace {
    let n = group.degree();
    let orbitals = group.pair_orbitals();
    let mut matrix = vec![vec![0u16; n]; n];
    for (color, orbit) in orbitals.iter().enumerate() {
        for &(i, j) in orbit {
            matrix[i][j] = (color + 1) as u16;
            matrix[j][i] = (color + 1) as u16;
        }
    }
    ColoredSpace::new(matrix, None).expect("orbital pattern is a valid coloring")
}

fn sort_groups(groups: &mut Vec<PermGroup>) {
    groups.sort_by_cached_key(|g| {
        (
            g.order(),
            g.element_order_multiset(),
            canonical_form(&orbital_pattern(g)),
        )
    });
}

/// All regular permutation groups on n points up to conjugacy, i.e. the
/// regular actions of the abstract groups of order n. `limit` truncates
/// the output.
pub fn enumerate_regular_groups(n: usize, limit: Option<usize>) -> Result<Vec<PermGroup>> {
    if n == 0 || n > MAX_REGULAR_DEGREE {
        return Err(Error::DegreeTooLarge { n, max: MAX_REGULAR_DEGREE });
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<PermGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut groups = {
        let mut lock = cache.lock().unwrap();
        match lock.get(&n) {
            Some(found) => found.clone(),
            None => {
                let tables = abstract_groups(n);
                let mut groups: Vec<PermGroup> = tables
                    .iter()
                    .map(|t| {
                        let elements: Vec<Permutation> = (0..n)
                            .map(|a| {
                                Permutation::from_images(
                                    (0..n).map(|x| t[a][x] as u16).collect(),
                                )
                                .expect("table rows are permutations")
                            })
                            .collect();
                        PermGroup::from_elements(n, elements)
                            .expect("a Cayley table acts on itself")
                    })
                    .collect();
                for g in &groups {
                    debug_assert!(g.is_regular());
                }
                sort_groups(&mut groups);
                lock.insert(n, groups.clone());
                groups
            }
        }
    };
    if let Some(cap) = limit {
        groups.truncate(cap);
    }
    Ok(groups)
}

// ---------------------------------------------------------------------------
// Transitive groups of degree <= 8.
//
// Every transitive group contains a fixed-point-free element (the average
// number of fixed points over the group is the orbit count, 1, while the
// identity alone fixes n >= 2 points). From the cyclic groups generated
// by fixed-point-free elements we can therefore reach every transitive
// group by repeatedly adjoining one element of prime-power order: any
// element is generated by its prime-power components. The walk stays
// inside subgroups containing a fixed-point-free element, deduplicating
// conjugate classes as it goes.
// ---------------------------------------------------------------------------

type PermArr = [u8; 8];

struct SymCtx {
    n: usize,
    perms: Vec<PermArr>,
    prime_power_order: Vec<bool>,
    parity_odd: Vec<bool>,
    alternating: Vec<u32>,
    full: Vec<u32>,
}

fn arr_code(p: &PermArr, n: usize) -> u32 {
    (0..n).fold(0u32, |acc, i| acc | ((p[i] as u32) << (3 * i)))
}

fn code_arr(code: u32, n: usize) -> PermArr {
    let mut p = [0u8; 8];
    for (i, slot) in p.iter_mut().enumerate().take(8) {
        *slot = if i < n { ((code >> (3 * i)) & 7) as u8 } else { i as u8 };
    }
    p
}

fn arr_compose(f: &PermArr, g: &PermArr) -> PermArr {
    let mut out = [0u8; 8];
    for i in 0..8 {
        out[i] = f[g[i] as usize];
    }
    out
}

fn arr_inverse(f: &PermArr) -> PermArr {
    let mut out = [0u8; 8];
    for i in 0..8 {
        out[f[i] as usize] = i as u8;
    }
    out
}

fn arr_order(f: &PermArr, n: usize) -> usize {
    let id: PermArr = [0, 1, 2, 3, 4, 5, 6, 7];
    let mut cur = *f;
    let mut k = 1;
    while cur[..n] != id[..n] {
        cur = arr_compose(f, &cur);
        k += 1;
    }
    k
}

fn arr_cycle_type(f: &PermArr, n: usize) -> u64 {
    let mut seen = [false; 8];
    let mut parts: Vec<usize> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = f[p] as usize;
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable();
    parts.iter().fold(0u64, |acc, &p| acc * 9 + p as u64)
}

fn sym_ctx(n: usize) -> &'static SymCtx {
    static CTXS: OnceLock<Mutex<HashMap<usize, &'static SymCtx>>> = OnceLock::new();
    let map = CTXS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut lock = map.lock().unwrap();
    if let Some(ctx) = lock.get(&n) {
        return ctx;
    }
    let mut perms: Vec<PermArr> = Vec::new();
    let mut cur: PermArr = [0, 1, 2, 3, 4, 5, 6, 7];
    heap_permutations(&mut cur, n, &mut perms);
    perms.sort_by_key(|p| arr_code(p, n));
    let prime_power_order = perms
        .iter()
        .map(|p| {
            let o = arr_order(p, n);
            o > 1 && is_prime_power(o)
        })
        .collect();
    let parity_odd = perms.iter().map(|p| arr_parity_odd(p, n)).collect::<Vec<_>>();
    let alternating: Vec<u32> = perms
        .iter()
        .zip(parity_odd.iter())
        .filter(|(_, &odd)| !odd)
        .map(|(p, _)| arr_code(p, n))
        .collect();
    let full: Vec<u32> = perms.iter().map(|p| arr_code(p, n)).collect();
    let ctx = Box::leak(Box::new(SymCtx {
        n,
        perms,
        prime_power_order,
        parity_odd,
        alternating,
        full,
    }));
    lock.insert(n, ctx);
    ctx
}

fn heap_permutations(cur: &mut PermArr, n: usize, out: &mut Vec<PermArr>) {
    fn rec(cur: &mut PermArr, k: usize, n: usize, out: &mut Vec<PermArr>) {
        if k == n {
            out.push(*cur);
            return;
        }
        for i in k..n {
            cur.swap(k, i);
            rec(cur, k + 1, n, out);
            cur.swap(k, i);
        }
    }
    rec(cur, 0, n, out);
}

fn arr_parity_odd(p: &PermArr, n: usize) -> bool {
    let mut seen = [false; 8];
    let mut transpositions = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            q = p[q] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 1
}

fn is_prime_power(mut k: usize) -> bool {
    for p in 2..=k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            return k == 1;
        }
    }
    false
}

#[derive(Clone)]
struct SubgroupClass {
    order: usize,
    gens: Vec<u32>,
    elements: Vec<u32>,
    signature: u64,
    transitive: bool,
}

fn class_signature(ctx: &SymCtx, elements: &[u32]) -> u64 {
    let mut types: Vec<u64> = elements
        .iter()
        .map(|&c| arr_cycle_type(&code_arr(c, ctx.n), ctx.n))
        .collect();
    types.sort_unstable();
    let mut orbit_sizes = orbit_size_multiset(ctx, elements);
    orbit_sizes.sort_unstable();
    let mut hash = 1469598103934665603u64;
    let mut mix = |v: u64| {
        hash ^= v;
        hash = hash.wrapping_mul(1099511628211);
    };
    mix(elements.len() as u64);
    for t in types {
        mix(t);
    }
    for o in orbit_sizes {
        mix(o as u64);
    }
    hash
}

fn orbit_size_multiset(ctx: &SymCtx, elements: &[u32]) -> Vec<usize> {
    let n = ctx.n;
    let arrs: Vec<PermArr> = elements.iter().map(|&c| code_arr(c, n)).collect();
    let mut seen = [false; 8];
    let mut sizes = Vec::new();
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
            for a in &arrs {
                let q = a[p] as usize;
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
        }
        sizes.push(orbit.len());
    }
    sizes
}

/// Closure of generators, with the index-below-n shortcut: a proper
/// subgroup of S_n (n >= 5) has index at least n, so anything larger is
/// the alternating or the full symmetric group.
fn closure_codes(ctx: &SymCtx, gens: &[u32], cap: usize) -> Result<Vec<u32>> {
    let n = ctx.n;
    let factorial: usize = (1..=n).product();
    let shortcut_threshold = if n >= 5 { factorial / n } else { factorial };
    let gen_arrs: Vec<PermArr> = gens.iter().map(|&c| code_arr(c, n)).collect();
    let id: PermArr = [0, 1, 2, 3, 4, 5, 6, 7];
    let mut seen: HashSet<u32> = HashSet::new();
    seen.insert(arr_code(&id, n));
    let mut frontier: Vec<PermArr> = vec![id];
    while let Some(cur) = frontier.pop() {
        for g in &gen_arrs {
            let next = arr_compose(g, &cur);
            let code = arr_code(&next, n);
            if seen.insert(code) {
                if seen.len() > cap {
                    return Err(Error::OrderCapExceeded(cap));
                }
                if seen.len() > shortcut_threshold {
                    let all_even = gens.iter().all(|&c| {
                        let idx = ctx.full.binary_search(&c).unwrap();
                        !ctx.parity_odd[idx]
                    });
                    let out = if all_even { ctx.alternating.clone() } else { ctx.full.clone() };
                    if out.len() > cap {
                        return Err(Error::OrderCapExceeded(cap));
                    }
                    return Ok(out);
                }
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<u32> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

fn conjugate_classes(ctx: &SymCtx, a: &SubgroupClass, b: &SubgroupClass) -> bool {
    if a.order != b.order || a.signature != b.signature {
        return false;
    }
    let n = ctx.n;
    let b_set: HashSet<u32> = b.elements.iter().copied().collect();
    let gen_arrs: Vec<PermArr> = a.gens.iter().map(|&c| code_arr(c, n)).collect();
    for sigma in &ctx.perms {
        let sigma_inv = arr_inverse(sigma);
        let ok = gen_arrs.iter().all(|g| {
            let conj = arr_compose(sigma, &arr_compose(g, &sigma_inv));
            b_set.contains(&arr_code(&conj, n))
        });
        if ok {
            return true;
        }
    }
    false
}

fn make_class(ctx: &SymCtx, gens: Vec<u32>, elements: Vec<u32>) -> SubgroupClass {
    let signature = class_signature(ctx, &elements);
    let transitive = orbit_size_multiset(ctx, &elements).len() == 1;
    SubgroupClass {
        order: elements.len(),
        gens,
        elements,
        signature,
        transitive,
    }
}

/// Double-coset representatives G g G over the whole symmetric group,
/// restricted to elements of prime-power order outside G.
fn adjoin_candidates(ctx: &SymCtx, class: &SubgroupClass) -> Vec<u32> {
    let n = ctx.n;
    let member: HashSet<u32> = class.elements.iter().copied().collect();
    let gen_arrs: Vec<PermArr> = class.gens.iter().map(|&c| code_arr(c, n)).collect();
    let mut visited: HashSet<u32> = HashSet::new();
    let mut reps = Vec::new();
    for (idx, p) in ctx.perms.iter().enumerate() {
        let code = arr_code(p, n);
        if member.contains(&code) || visited.contains(&code) {
            continue;
        }
        if ctx.prime_power_order[idx] {
            reps.push(code);
        }
        // Flood the double coset so later members are skipped.
        let mut queue = vec![*p];
        visited.insert(code);
        while let Some(cur) = queue.pop() {
            for g in &gen_arrs {
                for next in [arr_compose(g, &cur), arr_compose(&cur, g)] {
                    let c = arr_code(&next, n);
                    if !member.contains(&c) && visited.insert(c) {
                        queue.push(next);
                    }
                }
            }
        }
    }
    reps
}

fn seeds(ctx: &SymCtx) -> Vec<SubgroupClass> {
    // One fixed-point-free cycle type per partition of n into parts >= 2.
    let n = ctx.n;
    let mut parts_list: Vec<Vec<usize>> = Vec::new();
    fn partitions(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=rest {
            if rest - part != 0 && rest - part < min.max(2) {
                continue;
            }
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    partitions(n, 2, &mut Vec::new(), &mut parts_list);
    let mut out = Vec::new();
    for parts in parts_list {
        let mut images = [0u8; 8];
        let mut start = 0;
        for &len in &parts {
            for i in 0..len {
                images[start + i] = (start + (i + 1) % len) as u8;
            }
            start += len;
        }
        for i in start..8 {
            images[i] = i as u8;
        }
        let code = arr_code(&images, n);
        let elements = closure_codes(ctx, &[code], usize::MAX).unwrap();
        out.push(make_class(ctx, vec![code], elements));
    }
    out
}

/// All transitive subgroups of the symmetric group on n points up to
/// conjugacy, for n <= 8.
pub fn enumerate_transitive_groups(n: usize, order_cap: usize) -> Result<Vec<PermGroup>> {
    if n == 0 || n > MAX_TRANSITIVE_DEGREE {
        return Err(Error::DegreeTooLarge { n, max: MAX_TRANSITIVE_DEGREE });
    }
    if n == 1 {
        return Ok(vec![PermGroup::trivial(1)]);
    }
    let factorial: usize = (1..=n).product();
    if factorial > order_cap {
        return Err(Error::OrderCapExceeded(order_cap));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<PermGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = cache.lock().unwrap().get(&n) {
        return Ok(found.clone());
    }

    let ctx = sym_ctx(n);
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    for seed in seeds(ctx) {
        if !classes.iter().any(|c| conjugate_classes(ctx, c, &seed)) {
            frontier.push(classes.len());
            classes.push(seed);
        }
    }
    while !frontier.is_empty() {
        // Expand the whole frontier in parallel, then dedupe serially.
        let expansions: Vec<(Vec<u32>, Vec<u32>)> = frontier
            .par_iter()
            .flat_map_iter(|&idx| {
                let class = classes[idx].clone();
                let candidates = adjoin_candidates(ctx, &class);
                candidates.into_iter().filter_map(move |g| {
                    let mut gens = class.gens.clone();
                    gens.push(g);
                    closure_codes(ctx, &gens, usize::MAX)
                        .ok()
                        .map(|elements| (gens, elements))
                })
            })
            .collect();
        let mut next_frontier = Vec::new();
        let mut seen_sets: HashSet<u64> = HashSet::new();
        for class in &classes {
            seen_sets.insert(element_set_hash(&class.elements));
        }
        for (gens, elements) in expansions {
            if !seen_sets.insert(element_set_hash(&elements)) {
                continue;
            }
            let candidate = make_class(ctx, gens, elements);
            if classes.iter().any(|c| conjugate_classes(ctx, c, &candidate)) {
                continue;
            }
            // Orbital refinement check along the lattice walk: a subgroup
            // never has fewer pair orbits than its overgroup.
            next_frontier.push(classes.len());
            classes.push(candidate);
        }
        frontier = next_frontier;
    }

    let mut groups: Vec<PermGroup> = classes
        .into_iter()
        .filter(|c| c.transitive)
        .map(|c| {
            let elements: Vec<Permutation> = c
                .elements
                .iter()
                .map(|&code| {
                    let arr = code_arr(code, n);
                    Permutation::from_images(arr[..n].iter().map(|&v| v as u16).collect())
                        .expect("stored codes are permutations")
                })
                .collect();
            PermGroup::from_elements(n, elements).expect("closed by construction")
        })
        .collect();
    sort_groups(&mut groups);
    cache.lock().unwrap().insert(n, groups.clone());
    Ok(groups)
}

fn element_set_hash(elements: &[u32]) -> u64 {
    let mut hash = 14695981039346656037u64;
    for &e in elements {
        let mut v = e as u64;
        v = v.wrapping_mul(0x9E3779B97F4A7C15);
        v ^= v >> 29;
        hash ^= v.wrapping_mul(0xBF58476D1CE4E5B9);
        hash = hash.rotate_left(5);
    }
    hash ^= elements.len() as u64;
    hash
}
