//! Finite subgroups of GL2(Z/p^n).
//!
//! Groups are stored explicitly: a canonically sorted element set together
//! with a generator list whose closure is exactly that set. Canonical order
//! is lexicographic on the least-nonnegative entries (a, b, c, d), which
//! makes deduplication and report output deterministic.
//!
//! The groups of interest are the Cartan subgroups
//! C = { [[a, b], [delta*b, a]] : a^2 - delta*b^2 a unit } and their
//! normalizers N = <diag(-1, 1), C>, plus the subgroup lattice machinery the
//! cohomology checks sweep over.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::modarith::{ModArithError, PrimePower, Residue, Vector2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatGroupError {
    #[error("p = {0} is even; only odd primes are supported")]
    EvenPrime(u64),
    #[error("generator {0} is not invertible modulo {1}")]
    NonInvertibleGenerator(String, u64),
    #[error("level {level} is outside 1..={max}")]
    BadLevel { level: u32, max: u32 },
    #[error("group is not contained in the Cartan normalizer")]
    NotSubgroupOfN,
    #[error("group is not contained in the mod-p image of the Cartan normalizer")]
    NotInImage,
    #[error("subgroup enumeration exceeded the candidate budget of {0}")]
    BudgetExceeded(usize),
    #[error("the two groups intersect nontrivially")]
    NontrivialIntersection,
    #[error(transparent)]
    Arith(#[from] ModArithError),
}

/// Invertible 2x2 matrix over Z/p^n, entries row-major (a, b, c, d).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    modulus: PrimePower,
    e: [u64; 4],
}

impl Mat2 {
    pub fn new(modulus: PrimePower, entries: [i64; 4]) -> Self {
        let m = modulus.value() as i64;
        let e = entries.map(|x| x.rem_euclid(m) as u64);
        Mat2 { modulus, e }
    }

    pub fn from_u64(modulus: PrimePower, entries: [u64; 4]) -> Self {
        let m = modulus.value();
        Mat2 {
            modulus,
            e: entries.map(|x| x % m),
        }
    }

    pub fn identity(modulus: PrimePower) -> Self {
        Mat2 {
            modulus,
            e: [1, 0, 0, 1],
        }
    }

    pub fn diag(modulus: PrimePower, a: i64, d: i64) -> Self {
        Mat2::new(modulus, [a, 0, 0, d])
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn entries(&self) -> [u64; 4] {
        self.e
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.e[2 * i + j]
    }

    pub fn det(&self) -> Residue {
        let m = self.modulus.value();
        let [a, b, c, d] = self.e;
        Residue::new((a * d % m + m - b * c % m) % m, self.modulus)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let m = self.modulus.value();
        let [a, b, c, d] = self.e;
        let [e, f, g, h] = rhs.e;
        Mat2 {
            modulus: self.modulus,
            e: [
                (a * e + b * g) % m,
                (a * f + b * h) % m,
                (c * e + d * g) % m,
                (c * f + d * h) % m,
            ],
        }
    }

    pub fn inverse(&self) -> Result<Mat2, ModArithError> {
        let det_inv = self.det().inverse()?.value();
        let m = self.modulus.value();
        let [a, b, c, d] = self.e;
        Ok(Mat2 {
            modulus: self.modulus,
            e: [
                d * det_inv % m,
                (m - b) % m * det_inv % m,
                (m - c) % m * det_inv % m,
                a * det_inv % m,
            ],
        })
    }

    pub fn pow(&self, mut k: u64) -> Mat2 {
        let mut base = *self;
        let mut acc = Mat2::identity(self.modulus);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative order (the matrix must be invertible).
    pub fn order(&self) -> u64 {
        let id = Mat2::identity(self.modulus);
        let mut x = *self;
        let mut k = 1;
        while x != id {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Entrywise reduction to level k <= n.
    pub fn reduce(&self, k: u32) -> Mat2 {
        let target = self.modulus.reduce_level(k);
        let t = target.value();
        Mat2 {
            modulus: target,
            e: self.e.map(|x| x % t),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.e == [1, 0, 0, 1]
    }

    /// Left action on column vectors.
    pub fn apply(&self, v: &Vector2) -> Vector2 {
        debug_assert_eq!(self.modulus, v.modulus());
        let m = self.modulus.value();
        let [a, b, c, d] = self.e;
        let [x, y] = v.coords();
        Vector2::from_u64((a * x + b * y) % m, (c * x + d * y) % m, self.modulus)
    }

    pub fn apply_raw(&self, v: [u64; 2]) -> [u64; 2] {
        let m = self.modulus.value();
        let [a, b, c, d] = self.e;
        [(a * v[0] + b * v[1]) % m, (c * v[0] + d * v[1]) % m]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self, self.modulus)
    }
}

/// diag(-1, 1), the reflection adjoined to a Cartan subgroup to form its
/// normalizer.
pub fn sigma1(modulus: PrimePower) -> Mat2 {
    Mat2::new(modulus, [-1, 0, 0, 1])
}

/// diag(1, -1).
pub fn sigma2(modulus: PrimePower) -> Mat2 {
    Mat2::new(modulus, [1, 0, 0, -1])
}

/// The scalar matrix diag(1+p, 1+p), a generator of the reduction kernel.
pub fn one_plus_p_scalar(modulus: PrimePower) -> Mat2 {
    let v = 1 + modulus.p() as i64;
    Mat2::new(modulus, [v, 0, 0, v])
}

/// [[1, p], [delta*p, 1]], the second generator of the reduction kernel of a
/// Cartan subgroup at level >= 2.
pub fn kernel_shear(modulus: PrimePower, delta: Residue) -> Mat2 {
    let p = modulus.p();
    let dp = delta.value() * p % modulus.value();
    Mat2::from_u64(modulus, [1, p, dp, 1])
}

/// [[1, 1], [delta, 1]], the standard non-scalar Cartan element (invertible
/// exactly when 1 - delta is a unit).
pub fn cartan_unipotent(modulus: PrimePower, delta: Residue) -> Mat2 {
    Mat2::from_u64(modulus, [1, 1, delta.value(), 1])
}

/// Parameters (p, n, delta) selecting a Cartan subgroup of GL2(Z/p^n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanParams {
    p: u64,
    n: u32,
    delta: Residue,
}

/// The multiplicative class of delta mod p, which decides the shape of the
/// Cartan subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaClass {
    SquareUnit,
    NonsquareUnit,
    MultipleOfP,
}

impl CartanParams {
    pub fn new(p: u64, n: u32, delta: i64) -> Result<Self, MatGroupError> {
        if p % 2 == 0 {
            return Err(MatGroupError::EvenPrime(p));
        }
        let modulus = PrimePower::new(p, n)?;
        Ok(CartanParams {
            p,
            n,
            delta: Residue::from_i64(delta, modulus),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn delta(&self) -> Residue {
        self.delta
    }

    pub fn modulus(&self) -> PrimePower {
        self.delta.modulus()
    }

    pub fn delta_class(&self) -> DeltaClass {
        let d = self.delta.value() % self.p;
        if d == 0 {
            return DeltaClass::MultipleOfP;
        }
        // Euler criterion mod p.
        let mp = PrimePower::new(self.p, 1).expect("odd prime");
        let euler = Residue::new(d, mp).pow((self.p - 1) / 2).value();
        if euler == 1 {
            DeltaClass::SquareUnit
        } else {
            DeltaClass::NonsquareUnit
        }
    }
}

/// Finite subgroup of GL2(Z/p^n): closed sorted element set plus generators.
#[derive(Clone, PartialEq, Eq)]
pub struct MatGroup {
    modulus: PrimePower,
    elements: Vec<Mat2>,
    generators: Vec<Mat2>,
}

impl fmt::Debug for MatGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatGroup(order={}, gens=[", self.order())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "] mod {})", self.modulus)
    }
}

impl MatGroup {
    pub fn trivial(modulus: PrimePower) -> Self {
        MatGroup {
            modulus,
            elements: vec![Mat2::identity(modulus)],
            generators: Vec::new(),
        }
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn contains(&self, g: &Mat2) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &MatGroup) -> bool {
        self.modulus == other.modulus && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Intersection of two subgroups of a common ambient group.
    pub fn intersection(&self, other: &MatGroup) -> MatGroup {
        debug_assert_eq!(self.modulus, other.modulus);
        let elements: Vec<Mat2> = self
            .elements
            .iter()
            .copied()
            .filter(|g| other.contains(g))
            .collect();
        let generators = greedy_generators(self.modulus, &elements);
        MatGroup {
            modulus: self.modulus,
            elements,
            generators,
        }
    }

    pub fn is_normal_in(&self, ambient: &MatGroup) -> bool {
        ambient.elements.iter().all(|x| {
            let xi = x.inverse().expect("group elements are invertible");
            self.elements
                .iter()
                .all(|h| self.contains(&x.mul(h).mul(&xi)))
        })
    }

    fn from_element_set(
        modulus: PrimePower,
        mut elements: Vec<Mat2>,
        generators: Vec<Mat2>,
    ) -> Self {
        elements.sort_unstable();
        elements.dedup();
        MatGroup {
            modulus,
            elements,
            generators,
        }
    }
}

/// Smallest subgroup of GL2(Z/m) containing the generators, by breadth-first
/// closure under multiplication.
pub fn closure(gens: &[Mat2], modulus: PrimePower) -> Result<MatGroup, MatGroupError> {
    for g in gens {
        if g.modulus() != modulus {
            return Err(
                ModArithError::ModulusMismatch(g.modulus().value(), modulus.value()).into(),
            );
        }
        if !g.is_invertible() {
            return Err(MatGroupError::NonInvertibleGenerator(
                g.to_string(),
                modulus.value(),
            ));
        }
    }
    let id = Mat2::identity(modulus);
    let mut seen: HashSet<Mat2> = HashSet::new();
    seen.insert(id);
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut generators: Vec<Mat2> = Vec::new();
    for g in gens {
        if !g.is_identity() && !generators.contains(g) {
            generators.push(*g);
        }
    }
    Ok(MatGroup::from_element_set(modulus, queue, generators))
}

/// Deterministic small generating set for an explicitly listed subgroup:
/// scan elements in canonical order, keeping those that enlarge the closure.
fn greedy_generators(modulus: PrimePower, elements: &[Mat2]) -> Vec<Mat2> {
    let mut gens: Vec<Mat2> = Vec::new();
    let mut have = closure(&gens, modulus).expect("closure of empty set");
    if have.order() == elements.len() {
        return gens;
    }
    for g in elements {
        if !have.contains(g) {
            gens.push(*g);
            have = closure(&gens, modulus).expect("closure of subgroup elements");
            if have.order() == elements.len() {
                break;
            }
        }
    }
    gens
}

/// The Cartan subgroup C = { [[a, b], [delta*b, a]] : a^2 - delta*b^2 a unit }.
///
/// Order is (p-1)^2 p^(2n-2), (p^2-1) p^(2n-2) or p(p-1) p^(2n-2) according
/// to delta being a square unit, a nonsquare unit, or divisible by p.
pub fn cartan_subgroup(params: &CartanParams) -> Result<MatGroup, MatGroupError> {
    let modulus = params.modulus();
    let m = modulus.value();
    let p = params.p();
    let delta = params.delta().value();
    let mut elements = Vec::new();
    for a in 0..m {
        for b in 0..m {
            let det = (a * a % m + m - delta * b % m * b % m) % m;
            if det % p != 0 {
                elements.push(Mat2::from_u64(modulus, [a, b, delta * b % m, a]));
            }
        }
    }
    elements.sort_unstable();
    let generators = greedy_generators(modulus, &elements);
    Ok(MatGroup {
        modulus,
        elements,
        generators,
    })
}

/// The Cartan normalizer N = <diag(-1, 1), C>; C sits inside with index 2.
pub fn cartan_normalizer(params: &CartanParams) -> Result<MatGroup, MatGroupError> {
    let c = cartan_subgroup(params)?;
    let s = sigma1(params.modulus());
    let mut elements = c.elements.clone();
    elements.extend(c.elements.iter().map(|x| s.mul(x)));
    let mut generators = vec![s];
    generators.extend_from_slice(&c.generators);
    Ok(MatGroup::from_element_set(
        params.modulus(),
        elements,
        generators,
    ))
}

/// Image of G under entrywise reduction mod p^k (a surjection of groups).
pub fn reduce_group(g: &MatGroup, k: u32) -> Result<MatGroup, MatGroupError> {
    let n = g.modulus.n();
    if k == 0 || k > n {
        return Err(MatGroupError::BadLevel { level: k, max: n });
    }
    let target = g.modulus.reduce_level(k);
    let elements: Vec<Mat2> = g.elements.iter().map(|x| x.reduce(k)).collect();
    let mut generators = Vec::new();
    for x in g.generators.iter().map(|x| x.reduce(k)) {
        if !x.is_identity() && !generators.contains(&x) {
            generators.push(x);
        }
    }
    Ok(MatGroup::from_element_set(target, elements, generators))
}

/// Subgroup of elements congruent to the identity mod p^k; normal in G, and
/// |G| = |kernel| * |image|.
pub fn reduction_kernel(g: &MatGroup, k: u32) -> Result<MatGroup, MatGroupError> {
    let n = g.modulus.n();
    if k == 0 || k > n {
        return Err(MatGroupError::BadLevel { level: k, max: n });
    }
    let id = Mat2::identity(g.modulus.reduce_level(k));
    let elements: Vec<Mat2> = g
        .elements
        .iter()
        .copied()
        .filter(|x| x.reduce(k) == id)
        .collect();
    let generators = greedy_generators(g.modulus, &elements);
    Ok(MatGroup {
        modulus: g.modulus,
        elements,
        generators,
    })
}

/// Whether G (inside the Cartan normalizer for `params`) contains the entire
/// kernel of reduction mod p of that normalizer.
pub fn is_full_subgroup(g: &MatGroup, params: &CartanParams) -> Result<bool, MatGroupError> {
    let ambient = cartan_normalizer(params)?;
    if !g.is_subgroup_of(&ambient) {
        return Err(MatGroupError::NotSubgroupOfN);
    }
    let kg = reduction_kernel(g, 1)?;
    let kn = reduction_kernel(&ambient, 1)?;
    Ok(kg.elements == kn.elements)
}

/// The full subgroup of N_{delta, p^n} with prescribed mod-p image: the
/// closure of lifted generators of `image` together with the reduction
/// kernel of the normalizer.
///
/// Lifts are pinned for reproducibility: generators that are reductions of
/// diag(-1,1), diag(1,-1) or [[1,1],[delta,1]] lift to those exact matrices;
/// anything else takes the canonically least lift inside the normalizer.
pub fn full_preimage(image: &MatGroup, params: &CartanParams) -> Result<MatGroup, MatGroupError> {
    let level_one = PrimePower::new(params.p(), 1)?;
    if image.modulus != level_one {
        return Err(MatGroupError::NotInImage);
    }
    let ambient = cartan_normalizer(params)?;
    let ambient_image = reduce_group(&ambient, 1)?;
    if !image.is_subgroup_of(&ambient_image) {
        return Err(MatGroupError::NotInImage);
    }

    let modulus = params.modulus();
    let mut standard = vec![sigma1(modulus), sigma2(modulus)];
    let unipotent = cartan_unipotent(modulus, params.delta());
    if unipotent.is_invertible() {
        standard.push(unipotent);
    }

    let mut gens: Vec<Mat2> = Vec::new();
    for x in image.generators() {
        let lift = standard
            .iter()
            .copied()
            .find(|s| s.reduce(1) == *x)
            .or_else(|| ambient.elements.iter().copied().find(|e| e.reduce(1) == *x))
            .expect("image generator lifts into the normalizer");
        gens.push(lift);
    }
    gens.extend_from_slice(reduction_kernel(&ambient, 1)?.generators());

    let result = closure(&gens, modulus)?;
    if reduce_group(&result, 1)?.elements != image.elements {
        return Err(MatGroupError::NotInImage);
    }
    Ok(result)
}

/// One generator for each distinct cyclic subgroup of G, in canonical order
/// of the chosen representatives (the identity represents the trivial one).
pub fn cyclic_generators(g: &MatGroup) -> Vec<Mat2> {
    let mut seen: HashSet<Vec<Mat2>> = HashSet::new();
    let mut reps = Vec::new();
    for x in &g.elements {
        let mut cyc = vec![Mat2::identity(g.modulus)];
        let mut y = *x;
        while !y.is_identity() {
            cyc.push(y);
            y = y.mul(x);
        }
        cyc.sort_unstable();
        if seen.insert(cyc) {
            reps.push(*x);
        }
    }
    reps
}

pub const DEFAULT_ENUMERATION_BUDGET: usize = 2_000_000;

/// All distinct subgroups of G expressible with at most `max_gens`
/// generators. Candidates are extended one cyclic-subgroup representative at
/// a time, so the count of closure computations stays manageable; the
/// `budget` caps it and overruns surface as `BudgetExceeded`.
pub fn enumerate_subgroups(g: &MatGroup, max_gens: usize) -> Result<Vec<MatGroup>, MatGroupError> {
    enumerate_subgroups_capped(g, max_gens, DEFAULT_ENUMERATION_BUDGET)
}

pub fn enumerate_subgroups_capped(
    g: &MatGroup,
    max_gens: usize,
    budget: usize,
) -> Result<Vec<MatGroup>, MatGroupError> {
    assert!(max_gens >= 1, "max_gens must be at least 1");
    let candidates: Vec<Mat2> = cyclic_generators(g)
        .into_iter()
        .filter(|x| !x.is_identity())
        .collect();
    let trivial = MatGroup::trivial(g.modulus);

    let mut seen: HashMap<Vec<Mat2>, ()> = HashMap::new();
    seen.insert(trivial.elements.clone(), ());
    let mut found = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    let mut closures_done = 0usize;

    for _ in 0..max_gens {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &candidates {
                if h.contains(c) {
                    continue;
                }
                closures_done += 1;
                if closures_done > budget {
                    return Err(MatGroupError::BudgetExceeded(budget));
                }
                let mut gens = h.generators.clone();
                gens.push(*c);
                let k = closure(&gens, g.modulus)?;
                if !seen.contains_key(&k.elements) {
                    seen.insert(k.elements.clone(), ());
                    found.push(k.clone());
                    next.push(k);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(found)
}

/// Whether G stays normal after adjoining the automorphism group A, i.e.
/// whether G is normal in <A, G>. Requires A and G to meet only in the
/// identity.
pub fn twist_admissible(a: &MatGroup, g: &MatGroup) -> Result<bool, MatGroupError> {
    if a.modulus != g.modulus {
        return Err(ModArithError::ModulusMismatch(a.modulus.value(), g.modulus.value()).into());
    }
    let meet = a.intersection(g);
    if meet.order() != 1 {
        return Err(MatGroupError::NontrivialIntersection);
    }
    let mut gens = a.generators.clone();
    gens.extend_from_slice(&g.generators);
    let ag = closure(&gens, a.modulus)?;
    Ok(g.is_normal_in(&ag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u64, n: u32) -> PrimePower {
        PrimePower::new(p, n).unwrap()
    }

    fn params(p: u64, n: u32, delta: i64) -> CartanParams {
        CartanParams::new(p, n, delta).unwrap()
    }

    #[test]
    fn cartan_orders_at_p5_level1() {
        // Nonsquare unit delta: order p^2 - 1.
        assert_eq!(cartan_subgroup(&params(5, 1, 2)).unwrap().order(), 24);
        // Square unit delta: order (p-1)^2.
        assert_eq!(cartan_subgroup(&params(5, 1, 1)).unwrap().order(), 16);
        // delta divisible by p: order p(p-1).
        assert_eq!(cartan_subgroup(&params(5, 1, 0)).unwrap().order(), 20);
    }

    #[test]
    fn cartan_order_formula_across_levels() {
        for (p, n, delta) in [
            (3, 1, 2),
            (3, 2, 2),
            (3, 2, 1),
            (3, 2, 3),
            (5, 2, 2),
            (7, 1, 3),
        ] {
            let pr = params(p, n, delta);
            let c = cartan_subgroup(&pr).unwrap();
            let tail = (p as usize).pow(2 * n - 2);
            let expected = match pr.delta_class() {
                DeltaClass::SquareUnit => ((p - 1) * (p - 1)) as usize * tail,
                DeltaClass::NonsquareUnit => ((p * p - 1) as usize) * tail,
                DeltaClass::MultipleOfP => (p * (p - 1)) as usize * tail,
            };
            assert_eq!(c.order(), expected, "p={p} n={n} delta={delta}");
            let ng = cartan_normalizer(&pr).unwrap();
            assert_eq!(ng.order(), 2 * c.order());
            assert!(ng.contains(&sigma1(pr.modulus())));
            assert!(c.is_normal_in(&ng));
        }
    }

    #[test]
    fn normalizer_orders_from_the_degree_bounds() {
        // #N = 2(p^2 - 1) in the nonsquare case.
        assert_eq!(cartan_normalizer(&params(5, 1, 2)).unwrap().order(), 48);
        // #N = 2 p(p-1) p^2 at level 2 with p | delta.
        assert_eq!(cartan_normalizer(&params(5, 2, 20)).unwrap().order(), 1000);
    }

    #[test]
    fn cartan_even_prime_rejected() {
        assert_eq!(
            CartanParams::new(2, 1, 1).unwrap_err(),
            MatGroupError::EvenPrime(2)
        );
    }

    #[test]
    fn closure_small_cases() {
        let m9 = pp(3, 2);
        assert_eq!(closure(&[Mat2::identity(m9)], m9).unwrap().order(), 1);
        assert_eq!(closure(&[sigma1(m9)], m9).unwrap().order(), 2);

        // h1 = diag(4,4), h2 = [[1,3],[6,1]] (delta = 2): both of order 3,
        // commuting, trivial intersection.
        let h1 = one_plus_p_scalar(m9);
        let h2 = kernel_shear(m9, Residue::new(2, m9));
        assert_eq!(h1.order(), 3);
        assert_eq!(h2.order(), 3);
        assert_eq!(h1.mul(&h2), h2.mul(&h1));
        assert_eq!(closure(&[h1, h2], m9).unwrap().order(), 9);
    }

    #[test]
    fn closure_rejects_singular_generator() {
        let m9 = pp(3, 2);
        let bad = Mat2::new(m9, [3, 0, 0, 1]);
        assert!(matches!(
            closure(&[bad], m9),
            Err(MatGroupError::NonInvertibleGenerator(_, 9))
        ));
    }

    #[test]
    fn normalizer_order_divides_ambient_gl2_order() {
        // Lagrange sanity. |GL2(Z/9)| = 9^4 (1 - 1/3)(1 - 1/9) = 3888.
        let gl2_z9_order = 3888usize;
        for delta in 0..9 {
            let n = cartan_normalizer(&params(3, 2, delta)).unwrap();
            assert_eq!(gl2_z9_order % n.order(), 0, "delta={delta}");
        }
    }

    #[test]
    fn reduce_group_examples() {
        let n29 = cartan_normalizer(&params(3, 2, 2)).unwrap();
        assert_eq!(n29.order(), 144);
        let n23 = reduce_group(&n29, 1).unwrap();
        assert_eq!(n23.order(), 16); // 2(p^2 - 1) at p = 3
        assert_eq!(
            n23.elements(),
            cartan_normalizer(&params(3, 1, 2)).unwrap().elements()
        );
        // Reduction to own level is the identity map.
        assert_eq!(reduce_group(&n29, 2).unwrap().elements(), n29.elements());
        // A kernel collapses to the trivial group.
        let ker = reduction_kernel(&n29, 1).unwrap();
        assert_eq!(reduce_group(&ker, 1).unwrap().order(), 1);
        assert!(matches!(
            reduce_group(&n29, 3),
            Err(MatGroupError::BadLevel { .. })
        ));
    }

    #[test]
    fn reduction_kernel_examples() {
        let n29 = cartan_normalizer(&params(3, 2, 2)).unwrap();
        let ker = reduction_kernel(&n29, 1).unwrap();
        assert_eq!(ker.order(), 9); // 144 / 16
        assert!(ker.is_normal_in(&n29));
        assert_eq!(reduction_kernel(&n29, 2).unwrap().order(), 1);
        let trivial = MatGroup::trivial(pp(3, 2));
        assert_eq!(reduction_kernel(&trivial, 1).unwrap().order(), 1);
        // The kernel of a Cartan normalizer at level 2 is generated by the
        // two standard shears.
        let m9 = pp(3, 2);
        let expected = closure(
            &[one_plus_p_scalar(m9), kernel_shear(m9, Residue::new(2, m9))],
            m9,
        )
        .unwrap();
        assert_eq!(ker.elements(), expected.elements());
    }

    #[test]
    fn full_subgroup_detection() {
        let pr = params(3, 2, 2);
        let n = cartan_normalizer(&pr).unwrap();
        let ker = reduction_kernel(&n, 1).unwrap();
        assert!(is_full_subgroup(&ker, &pr).unwrap());
        assert!(!is_full_subgroup(&MatGroup::trivial(pr.modulus()), &pr).unwrap());
        // A group outside N errors.
        let outside = closure(&[Mat2::new(pr.modulus(), [1, 1, 0, 1])], pr.modulus()).unwrap();
        assert_eq!(
            is_full_subgroup(&outside, &pr),
            Err(MatGroupError::NotSubgroupOfN)
        );
    }

    #[test]
    fn full_preimage_orders() {
        let pr = params(3, 2, 2);
        let m3 = pp(3, 1);

        let trivial_image = MatGroup::trivial(m3);
        let g0 = full_preimage(&trivial_image, &pr).unwrap();
        assert_eq!(g0.order(), 9);

        let s1_image = closure(&[sigma1(m3)], m3).unwrap();
        let g1 = full_preimage(&s1_image, &pr).unwrap();
        assert_eq!(g1.order(), 18);
        assert!(is_full_subgroup(&g1, &pr).unwrap());
        assert_eq!(
            reduce_group(&g1, 1).unwrap().elements(),
            s1_image.elements()
        );
        assert!(g1.contains(&sigma1(pr.modulus())));

        // Ramified shape [[1,*],[0,±1]] mod 3 at delta = 3.
        let pr3 = params(3, 2, 3);
        let shear = Mat2::new(m3, [1, 1, 0, 1]);
        let image = closure(&[shear, sigma2(m3)], m3).unwrap();
        assert_eq!(image.order(), 6);
        let g = full_preimage(&image, &pr3).unwrap();
        assert_eq!(g.order(), 54);
        assert!(is_full_subgroup(&g, &pr3).unwrap());
    }

    #[test]
    fn full_preimage_respects_reduce_roundtrip() {
        // reduce_group . full_preimage is the identity on admissible images.
        let pr = params(5, 2, 2);
        let m5 = pp(5, 1);
        for image in [
            MatGroup::trivial(m5),
            closure(&[sigma1(m5)], m5).unwrap(),
            closure(&[sigma2(m5)], m5).unwrap(),
        ] {
            let lifted = full_preimage(&image, &pr).unwrap();
            assert_eq!(
                reduce_group(&lifted, 1).unwrap().elements(),
                image.elements()
            );
        }
    }

    #[test]
    fn cyclic_generator_counts() {
        let m3 = pp(3, 1);
        let order2 = closure(&[sigma1(m3)], m3).unwrap();
        assert_eq!(cyclic_generators(&order2).len(), 2);
        assert_eq!(cyclic_generators(&MatGroup::trivial(m3)).len(), 1);

        // Oracle: compute <g> for every element of N_{2,3} and dedupe.
        let n = cartan_normalizer(&params(3, 1, 2)).unwrap();
        assert_eq!(n.order(), 16);
        let mut distinct: HashSet<Vec<Mat2>> = HashSet::new();
        for g in n.elements() {
            let cyc = closure(&[*g], m3).unwrap();
            distinct.insert(cyc.elements().to_vec());
        }
        assert_eq!(cyclic_generators(&n).len(), distinct.len());
    }

    #[test]
    fn enumerate_subgroups_of_order_two_group() {
        let m3 = pp(3, 1);
        let g = closure(&[sigma1(m3)], m3).unwrap();
        let subs = enumerate_subgroups(&g, 1).unwrap();
        assert_eq!(subs.len(), 2);
    }

    #[test]
    fn enumerate_subgroups_matches_subset_closure_oracle() {
        // N_{1,3} has order 8; close every subset of its elements and count
        // the distinct subgroups that arise.
        let n = cartan_normalizer(&params(3, 1, 1)).unwrap();
        assert_eq!(n.order(), 8);
        let elems = n.elements().to_vec();
        let mut oracle: HashSet<Vec<Mat2>> = HashSet::new();
        for mask in 0u32..(1 << elems.len()) {
            let subset: Vec<Mat2> = (0..elems.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            let cl = closure(&subset, n.modulus()).unwrap();
            oracle.insert(cl.elements().to_vec());
        }
        let enumerated = enumerate_subgroups(&n, 3).unwrap();
        assert_eq!(enumerated.len(), oracle.len());
        for s in &enumerated {
            assert!(oracle.contains(s.elements()));
            assert!(s.contains(&Mat2::identity(n.modulus())));
            assert_eq!(n.order() % s.order(), 0);
        }
    }

    #[test]
    fn enumerate_budget_error() {
        let n = cartan_normalizer(&params(3, 1, 2)).unwrap();
        assert_eq!(
            enumerate_subgroups_capped(&n, 3, 4),
            Err(MatGroupError::BudgetExceeded(4))
        );
    }

    #[test]
    fn enumeration_recovers_full_preimages() {
        // Filtering enumerated subgroups by fullness reproduces every
        // full_preimage image at small parameters.
        let pr = params(3, 2, 2);
        let n = cartan_normalizer(&pr).unwrap();
        let subs = enumerate_subgroups(&n, 3).unwrap();
        let full: Vec<&MatGroup> = subs
            .iter()
            .filter(|s| is_full_subgroup(s, &pr).unwrap())
            .collect();
        let m3 = pp(3, 1);
        for image in [MatGroup::trivial(m3), closure(&[sigma1(m3)], m3).unwrap()] {
            let lifted = full_preimage(&image, &pr).unwrap();
            assert!(full.iter().any(|s| s.elements() == lifted.elements()));
        }
    }

    #[test]
    fn enumeration_is_closed_under_ambient_conjugation() {
        // Conjugating any enumerated subgroup by an ambient generator must
        // land back in the enumerated list; a missing subgroup of the same
        // shape would show up here.
        for delta in [1i64, 2, 3] {
            let n = cartan_normalizer(&params(3, 2, delta)).unwrap();
            let subs = enumerate_subgroups(&n, 3).unwrap();
            let known: HashSet<Vec<Mat2>> =
                subs.iter().map(|s| s.elements().to_vec()).collect();
            for sub in &subs {
                for g in n.generators() {
                    let gi = g.inverse().unwrap();
                    let mut conj: Vec<Mat2> =
                        sub.elements().iter().map(|x| g.mul(x).mul(&gi)).collect();
                    conj.sort_unstable();
                    assert!(
                        known.contains(&conj),
                        "conjugate of {:?} by {g} missing from enumeration",
                        sub
                    );
                }
            }
        }
    }

    #[test]
    fn twist_admissibility_examples() {
        let m5 = pp(5, 1);
        let n = cartan_normalizer(&params(5, 1, 2)).unwrap();
        let minus_one = Mat2::new(m5, [-1, 0, 0, -1]);
        let center = closure(&[minus_one], m5).unwrap();
        let g = closure(&[sigma1(m5)], m5).unwrap();

        // <-I> is central, so G is always normal in <A, G>.
        assert!(twist_admissible(&center, &g).unwrap());

        // The order-6 cyclic subgroup of C_{2,5} conjugates diag(-1,1) out of G.
        let c = cartan_subgroup(&params(5, 1, 2)).unwrap();
        let gen6 = c
            .elements()
            .iter()
            .copied()
            .find(|x| x.order() == 6)
            .expect("C_{2,5} is cyclic of order 24, so it has order-6 elements");
        let a6 = closure(&[gen6], m5).unwrap();
        assert!(!twist_admissible(&a6, &g).unwrap());
        assert!(a6.is_subgroup_of(&n));

        // Trivial A: AG = G.
        assert!(twist_admissible(&MatGroup::trivial(m5), &g).unwrap());

        // Nontrivial intersection is a precondition violation.
        assert_eq!(
            twist_admissible(&g, &g),
            Err(MatGroupError::NontrivialIntersection)
        );
    }

    #[test]
    fn split_cartan_is_conjugate_to_diagonal_torus() {
        // For delta a square unit with root d, P = [[1,1],[d,-d]] conjugates
        // C into the diagonal torus.
        let pr = params(5, 1, 1);
        let c = cartan_subgroup(&pr).unwrap();
        let m5 = pr.modulus();
        let d = 1i64; // sqrt(1)
        let p_mat = Mat2::new(m5, [1, 1, d, -d]);
        let p_inv = p_mat.inverse().unwrap();
        for x in c.elements() {
            let y = p_inv.mul(x).mul(&p_mat);
            assert_eq!(y.entry(0, 1), 0);
            assert_eq!(y.entry(1, 0), 0);
        }
    }

    proptest::proptest! {
        #[test]
        fn prop_closure_ignores_generator_order(perm in 0usize..6, delta in 0i64..9) {
            // Closing the same generators in any order yields the same group.
            let m9 = pp(3, 2);
            let mut gens = vec![
                sigma1(m9),
                one_plus_p_scalar(m9),
                kernel_shear(m9, Residue::new(delta.unsigned_abs(), m9)),
            ];
            let a = closure(&gens, m9).unwrap();
            match perm % 6 {
                0 => {}
                1 => gens.swap(0, 1),
                2 => gens.swap(0, 2),
                3 => gens.swap(1, 2),
                4 => gens.rotate_left(1),
                _ => gens.reverse(),
            }
            let b = closure(&gens, m9).unwrap();
            proptest::prop_assert_eq!(a.elements(), b.elements());
        }
    }

    #[test]
    fn sigma1_conjugation_flips_antidiagonal() {
        let pr = params(3, 2, 2);
        let c = cartan_subgroup(&pr).unwrap();
        let s = sigma1(pr.modulus());
        for x in c.elements() {
            let y = s.mul(x).mul(&s);
            let m = pr.modulus().value();
            assert_eq!(y.entry(0, 0), x.entry(0, 0));
            assert_eq!(y.entry(0, 1), (m - x.entry(0, 1)) % m);
            assert_eq!(y.entry(1, 0), (m - x.entry(1, 0)) % m);
            assert_eq!(y.entry(1, 1), x.entry(1, 1));
        }
    }
}
