//! First group cohomology of subgroups of GL2(Z/p^n) with exact coefficients.
//!
//! For a finite G acting on M = (Z/p^n)^d, a 1-cocycle is a map phi: G -> M
//! with phi(gh) = phi(g) + g.phi(h); coboundaries are the maps
//! g -> (g - 1)x. On top of H^1 = Z^1/B^1 we compute the locally trivial
//! subgroup H^1_*: the classes whose restriction to every cyclic subgroup
//! <g> is a coboundary, which happens exactly when phi(g) lies in
//! Im(g - 1) for every g.
//!
//! Cocycles are parametrized by their values on a generating set rather than
//! on all of G: values propagate along a breadth-first spanning tree of the
//! Cayley graph, and every re-reached element contributes a linear
//! consistency constraint. That keeps the unknown count at 2|gens| residues
//! instead of 2|G| and is what makes sweeps over thousands of subgroups
//! cheap. A naive all-pairs solver in the test suite pins the two routes to
//! each other on small groups.

use std::fmt;

use thiserror::Error;

use crate::matgroup::{
    cartan_unipotent, closure, kernel_shear, one_plus_p_scalar, sigma1, sigma2, CartanParams,
    DeltaClass, Mat2, MatGroup, MatGroupError,
};
use crate::modarith::{
    self, quotient_presentation, solve_raw, ModArithError, PrimePower, Residue, RowSpan, Vector2,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("element {0} does not belong to the group")]
    ElementNotInGroup(String),
    #[error("delta = {0} is a square modulo p, but the inert witness needs a nonsquare unit")]
    SquareDelta(u64),
    #[error("no nonzero G-fixed vector available in V[p]")]
    NoFixedVector,
    #[error("delta = {0} is not p times a unit modulo p^2")]
    BadDelta(u64),
    #[error("generator values do not extend to a cocycle")]
    InconsistentGeneratorValues,
    #[error(transparent)]
    Group(#[from] MatGroupError),
    #[error(transparent)]
    Arith(#[from] ModArithError),
}

/// Coefficient module for the cohomology of a matrix group: either the
/// natural module V = (Z/p^n)^2, or one axis of it when the group is
/// diagonal (used to split V as W1 x W2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GModule {
    modulus: PrimePower,
    dim: usize,
    kind: ModuleKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ModuleKind {
    Natural,
    DiagonalAxis(usize),
}

impl GModule {
    pub fn natural(modulus: PrimePower) -> Self {
        GModule {
            modulus,
            dim: 2,
            kind: ModuleKind::Natural,
        }
    }

    /// The rank-one module on which a diagonal matrix acts through its
    /// (axis, axis) entry. Only meaningful for groups of diagonal matrices.
    pub fn diagonal_axis(modulus: PrimePower, axis: usize) -> Self {
        assert!(axis < 2);
        GModule {
            modulus,
            dim: 1,
            kind: ModuleKind::DiagonalAxis(axis),
        }
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Action matrix of g, dim x dim row-major.
    fn act(&self, g: &Mat2) -> Vec<u64> {
        match self.kind {
            ModuleKind::Natural => g.entries().to_vec(),
            ModuleKind::DiagonalAxis(i) => {
                debug_assert!(
                    g.entry(0, 1) == 0 && g.entry(1, 0) == 0,
                    "axis modules require diagonal matrices"
                );
                vec![g.entry(i, i)]
            }
        }
    }
}

/// A 1-cocycle G -> V, stored by its values on the canonically sorted
/// element list of G.
#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: MatGroup,
    values: Vec<Vector2>,
}

impl fmt::Debug for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cocycle(|G|={}", self.group.order())?;
        for g in self.group.generators() {
            let v = self.value(g).expect("generators lie in the group");
            write!(f, ", {g} -> {v}")?;
        }
        write!(f, ")")
    }
}

impl Cocycle {
    pub fn group(&self) -> &MatGroup {
        &self.group
    }

    pub fn value(&self, g: &Mat2) -> Result<Vector2, CohomologyError> {
        let idx = self
            .group
            .elements()
            .binary_search(g)
            .map_err(|_| CohomologyError::ElementNotInGroup(g.to_string()))?;
        Ok(self.values[idx])
    }

    /// Element-indexed flat encoding (two coordinates per element, canonical
    /// element order).
    pub fn to_flat(&self) -> Vec<u64> {
        self.values.iter().flat_map(|v| v.coords()).collect()
    }

    /// Checks the crossed-homomorphism law. Exhaustive up to 200 elements,
    /// deterministically sampled beyond that.
    pub fn is_valid(&self) -> bool {
        let elems = self.group.elements();
        let n = elems.len();
        let check = |i: usize, j: usize| -> bool {
            let g = elems[i];
            let h = elems[j];
            let gh = g.mul(&h);
            let lhs = self.value(&gh).expect("closed under products");
            let rhs = self.values[i] + g.apply(&self.values[j]);
            lhs == rhs
        };
        if n <= 200 {
            (0..n).all(|i| (0..n).all(|j| check(i, j)))
        } else {
            // Stride sampling covers every row and column.
            let step = n / 199 + 1;
            (0..n).all(|i| (0..n).step_by(step).all(|j| check(i, j) && check(j, i)))
        }
    }

    /// Whether one x in V witnesses phi(g) = (g - 1)x for every g at once.
    pub fn is_coboundary(&self) -> bool {
        let modulus = self.group.modulus();
        let m = modulus.value();
        let elems = self.group.elements();
        let mut data = Vec::with_capacity(4 * elems.len());
        let mut rhs = Vec::with_capacity(2 * elems.len());
        for (g, v) in elems.iter().zip(&self.values) {
            let [a, b, c, d] = g.entries();
            data.extend_from_slice(&[(a + m - 1) % m, b, c, (d + m - 1) % m]);
            let [x, y] = v.coords();
            rhs.push(x);
            rhs.push(y);
        }
        solve_raw(modulus, 2 * elems.len(), 2, &data, &rhs).is_some()
    }

    /// Whether the restriction to every cyclic subgroup is a coboundary.
    pub fn is_locally_trivial(&self) -> bool {
        self.group
            .elements()
            .iter()
            .zip(&self.values)
            .all(|(g, v)| value_restriction_trivial(g, v))
    }

    /// Propagates values on the generators of `group` to a full cocycle,
    /// checking consistency along the way.
    pub fn from_generator_values(
        group: &MatGroup,
        gen_values: &[Vector2],
    ) -> Result<Cocycle, CohomologyError> {
        let gens = group.generators();
        if gens.len() != gen_values.len() {
            return Err(CohomologyError::InconsistentGeneratorValues);
        }
        let elems = group.elements();
        let mut values: Vec<Option<Vector2>> = vec![None; elems.len()];
        let id = Mat2::identity(group.modulus());
        let id_idx = elems
            .binary_search(&id)
            .expect("groups contain the identity");
        values[id_idx] = Some(Vector2::zero(group.modulus()));
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let xi = elems.binary_search(&x).expect("closure");
            let phi_x = values[xi].expect("queued elements carry values");
            for (g, val) in gens.iter().zip(gen_values) {
                let y = x.mul(g);
                let yi = elems.binary_search(&y).expect("closure");
                let phi_y = phi_x + x.apply(val);
                match values[yi] {
                    None => {
                        values[yi] = Some(phi_y);
                        queue.push(y);
                    }
                    Some(existing) if existing != phi_y => {
                        return Err(CohomologyError::InconsistentGeneratorValues);
                    }
                    Some(_) => {}
                }
            }
        }
        if values.iter().any(Option::is_none) {
            return Err(CohomologyError::InconsistentGeneratorValues);
        }
        Ok(Cocycle {
            group: group.clone(),
            values: values.into_iter().map(Option::unwrap).collect(),
        })
    }

    fn from_flat(group: &MatGroup, flat: &[u64]) -> Cocycle {
        let modulus = group.modulus();
        let values = flat
            .chunks_exact(2)
            .map(|c| Vector2::from_u64(c[0], c[1], modulus))
            .collect();
        Cocycle {
            group: group.clone(),
            values,
        }
    }
}

/// Solvability of (g - 1)x = value, the local-triviality condition at g: a
/// cocycle on <g> is a coboundary exactly when its value on g lies in
/// Im(g - 1).
pub fn value_restriction_trivial(g: &Mat2, value: &Vector2) -> bool {
    let modulus = g.modulus();
    let m = modulus.value();
    let [a, b, c, d] = g.entries();
    let data = [(a + m - 1) % m, b, c, (d + m - 1) % m];
    let [x, y] = value.coords();
    solve_raw(modulus, 2, 2, &data, &[x, y]).is_some()
}

/// Whether the restriction of phi to <g> is trivial in H^1(<g>, V).
pub fn restriction_trivial(phi: &Cocycle, g: &Mat2) -> Result<bool, CohomologyError> {
    let v = phi.value(g)?;
    Ok(value_restriction_trivial(g, &v))
}

/// Isomorphism type of a first-cohomology group, as elementary divisors
/// (largest first) plus one representative cocycle per cyclic factor.
#[derive(Clone, Debug)]
pub struct H1Summary {
    pub divisors: Vec<u64>,
    pub representatives: Vec<Cocycle>,
    pub is_trivial: bool,
}

impl H1Summary {
    /// log_p of the group order.
    pub fn size_exponent(&self, p: u64) -> u64 {
        self.divisors
            .iter()
            .map(|&d| {
                let mut e = 0;
                let mut d = d;
                while d > 1 {
                    d /= p;
                    e += 1;
                }
                e
            })
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Generator-parametrized engine
// ---------------------------------------------------------------------------

struct Engine<'a> {
    group: &'a MatGroup,
    module: &'a GModule,
    dim: usize,
    unknowns: usize,
    /// Per canonical element index: dim x unknowns evaluation matrix
    /// (phi(element) = coeff . generator-values).
    coeff: Vec<Vec<u64>>,
    z1: RowSpan,
    b1: RowSpan,
}

impl<'a> Engine<'a> {
    fn new(group: &'a MatGroup, module: &'a GModule) -> Self {
        assert_eq!(
            group.modulus(),
            module.modulus(),
            "group and module moduli must agree"
        );
        let modulus = group.modulus();
        let m = modulus.value();
        let dim = module.dim();
        let gens = group.generators();
        let k = gens.len();
        let unknowns = dim * k;
        let elems = group.elements();
        let n = elems.len();

        let idx_of = |x: &Mat2| elems.binary_search(x).expect("closure under products");

        let mut coeff: Vec<Option<Vec<u64>>> = vec![None; n];
        let id = Mat2::identity(modulus);
        coeff[idx_of(&id)] = Some(vec![0; dim * unknowns]);
        let mut builder = modarith::HowellBuilder::new(modulus, unknowns.max(1));
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let xi = idx_of(&x);
            let cx = coeff[xi]
                .clone()
                .expect("queued elements have coefficients");
            let act_x = module.act(&x);
            for (j, g) in gens.iter().enumerate() {
                // phi(x g_j) = phi(x) + act(x) . v_j
                let mut cy = cx.clone();
                for r in 0..dim {
                    for s in 0..dim {
                        let col = j * dim + s;
                        cy[r * unknowns + col] = (cy[r * unknowns + col] + act_x[r * dim + s]) % m;
                    }
                }
                let y = x.mul(g);
                let yi = idx_of(&y);
                match &coeff[yi] {
                    None => {
                        coeff[yi] = Some(cy);
                        queue.push(y);
                    }
                    Some(existing) => {
                        for r in 0..dim {
                            let row: Vec<u64> = (0..unknowns)
                                .map(|c| {
                                    (cy[r * unknowns + c] + m - existing[r * unknowns + c]) % m
                                })
                                .collect();
                            if row.iter().any(|&v| v != 0) {
                                builder.insert(row);
                            }
                        }
                    }
                }
            }
        }
        let constraints = builder.finish();
        let coeff: Vec<Vec<u64>> = coeff
            .into_iter()
            .map(|c| c.expect("generators reach every element"))
            .collect();

        // Z^1 in parameter space: the right kernel of the constraint span.
        let z1 = if k == 0 {
            RowSpan::zero(modulus, 0)
        } else {
            let cons_rows = constraints.rows();
            let transposed: Vec<Vec<u64>> = (0..unknowns)
                .map(|u| cons_rows.iter().map(|r| r[u]).collect())
                .collect();
            let kernel_rows = modarith::left_kernel(modulus, &transposed, cons_rows.len());
            RowSpan::from_rows(modulus, unknowns, kernel_rows)
        };

        // B^1: images of the basis vectors of M under x -> ((g_j - 1)x)_j.
        let b1 = if k == 0 {
            RowSpan::zero(modulus, 0)
        } else {
            let rows = (0..dim).map(|t| {
                let mut row = vec![0u64; unknowns];
                for (j, g) in gens.iter().enumerate() {
                    let act = module.act(g);
                    for s in 0..dim {
                        let mut v = act[s * dim + t] % m;
                        if s == t {
                            v = (v + m - 1) % m;
                        }
                        row[j * dim + s] = v;
                    }
                }
                row
            });
            RowSpan::from_rows(modulus, unknowns, rows)
        };
        debug_assert!(b1.is_subspan_of(&z1));

        Engine {
            group,
            module,
            dim,
            unknowns,
            coeff,
            z1,
            b1,
        }
    }

    /// phi(element i) for the parameter vector `params`.
    fn evaluate(&self, params: &[u64], i: usize) -> Vec<u64> {
        let m = self.group.modulus().value();
        let c = &self.coeff[i];
        (0..self.dim)
            .map(|r| {
                (0..self.unknowns).fold(0u64, |acc, u| {
                    (acc + c[r * self.unknowns + u] * params[u]) % m
                })
            })
            .collect()
    }

    /// Expands a parameter vector to the element-indexed encoding.
    fn expand(&self, params: &[u64]) -> Vec<u64> {
        let n = self.group.order();
        let mut out = Vec::with_capacity(self.dim * n);
        for i in 0..n {
            out.extend(self.evaluate(params, i));
        }
        out
    }

    fn expand_span(&self, span: &RowSpan) -> RowSpan {
        let modulus = self.group.modulus();
        let cols = self.dim * self.group.order();
        RowSpan::from_rows(modulus, cols, span.rows().iter().map(|r| self.expand(r)))
    }

    /// The submodule of Z^1 cut out by phi(g) in Im(g - 1) for all g.
    fn locally_trivial(&self) -> RowSpan {
        let modulus = self.group.modulus();
        let m = modulus.value();
        if self.unknowns == 0 {
            return RowSpan::zero(modulus, 0);
        }
        let mut w = self.z1.clone();
        for (i, g) in self.group.elements().iter().enumerate() {
            if g.is_identity() || w.rank() == 0 {
                continue;
            }
            let act = self.module.act(g);
            // Im(g - 1) as rows.
            let image_rows: Vec<Vec<u64>> = (0..self.dim)
                .map(|t| {
                    (0..self.dim)
                        .map(|s| {
                            let mut v = act[s * self.dim + t] % m;
                            if s == t {
                                v = (v + m - 1) % m;
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            // Values of the current basis at g.
            let mut stacked: Vec<Vec<u64>> =
                w.rows().iter().map(|row| self.evaluate(row, i)).collect();
            let w_count = stacked.len();
            stacked.extend(image_rows);
            let kernel = modarith::left_kernel(modulus, &stacked, self.dim);
            let new_rows: Vec<Vec<u64>> = kernel
                .iter()
                .map(|coeffs| {
                    let mut acc = vec![0u64; self.unknowns];
                    for (c, row) in coeffs[..w_count].iter().zip(w.rows()) {
                        for (a, &r) in acc.iter_mut().zip(row) {
                            *a = (*a + r * c) % m;
                        }
                    }
                    acc
                })
                .collect();
            w = RowSpan::from_rows(modulus, self.unknowns, new_rows);
        }
        debug_assert!(self.b1.is_subspan_of(&w));
        w
    }

    fn summarize(&self, sup: &RowSpan, sub: &RowSpan) -> H1Summary {
        let pres = quotient_presentation(sup, sub).expect("B^1 is contained in Z^1");
        let divisors: Vec<u64> = pres.iter().map(|(d, _)| *d).collect();
        let representatives = pres
            .iter()
            .map(|(_, params)| Cocycle::from_flat(self.group, &self.expand(params)))
            .collect();
        H1Summary {
            is_trivial: divisors.is_empty(),
            divisors,
            representatives,
        }
    }
}

/// The coboundary space B^1(G, M) in the element-indexed encoding; its size
/// is |M| / |M^G|.
pub fn coboundary_space(group: &MatGroup, module: &GModule) -> RowSpan {
    let modulus = group.modulus();
    let m = modulus.value();
    let dim = module.dim();
    let cols = dim * group.order();
    let rows = (0..dim).map(|t| {
        let mut row = Vec::with_capacity(cols);
        for g in group.elements() {
            let act = module.act(g);
            for s in 0..dim {
                let mut v = act[s * dim + t] % m;
                if s == t {
                    v = (v + m - 1) % m;
                }
                row.push(v);
            }
        }
        row
    });
    RowSpan::from_rows(modulus, cols, rows)
}

/// The cocycle space Z^1(G, M) in the element-indexed encoding.
pub fn cocycle_space(group: &MatGroup, module: &GModule) -> RowSpan {
    let engine = Engine::new(group, module);
    engine.expand_span(&engine.z1)
}

/// The locally trivial cocycles, element-indexed: all of B^1 plus every
/// cocycle whose value at each g is hit by g - 1.
pub fn locally_trivial_cocycles(group: &MatGroup, module: &GModule) -> RowSpan {
    let engine = Engine::new(group, module);
    let lt = engine.locally_trivial();
    engine.expand_span(&lt)
}

/// H^1(G, M) = Z^1/B^1 as elementary divisors with representative cocycles.
pub fn h1(group: &MatGroup, module: &GModule) -> H1Summary {
    let engine = Engine::new(group, module);
    engine.summarize(&engine.z1.clone(), &engine.b1)
}

/// The locally trivial part H^1_*(G, M): classes vanishing under restriction
/// to every cyclic subgroup.
pub fn h1_star(group: &MatGroup, module: &GModule) -> H1Summary {
    let engine = Engine::new(group, module);
    let lt = engine.locally_trivial();
    engine.summarize(&lt, &engine.b1)
}

/// Fast triviality test for H^1_* that skips representative extraction.
pub fn h1_star_is_trivial(group: &MatGroup, module: &GModule) -> bool {
    let engine = Engine::new(group, module);
    let lt = engine.locally_trivial();
    lt.size_exponent() == engine.b1.size_exponent()
}

/// Mod-p image options admitting a nonzero locally trivial class in the
/// inert case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InertImage {
    Trivial,
    Sigma1,
    Sigma2,
}

impl InertImage {
    pub const ALL: [InertImage; 3] = [InertImage::Trivial, InertImage::Sigma1, InertImage::Sigma2];

    pub fn label(&self) -> &'static str {
        match self {
            InertImage::Trivial => "trivial",
            InertImage::Sigma1 => "diag(-1,1)",
            InertImage::Sigma2 => "diag(1,-1)",
        }
    }
}

/// The full subgroup of N_{delta, p^2} whose mod-p image is the given inert
/// option: generated by diag(1+p, 1+p), [[1, p], [delta p, 1]] and at most
/// one reflection.
pub fn inert_full_subgroup(
    p: u64,
    delta: i64,
    image: InertImage,
) -> Result<MatGroup, CohomologyError> {
    let params = CartanParams::new(p, 2, delta)?;
    let modulus = params.modulus();
    let mut gens = match image {
        InertImage::Trivial => vec![],
        InertImage::Sigma1 => vec![sigma1(modulus)],
        InertImage::Sigma2 => vec![sigma2(modulus)],
    };
    gens.push(one_plus_p_scalar(modulus));
    gens.push(kernel_shear(modulus, params.delta()));
    Ok(closure(&gens, modulus)?)
}

/// The explicit nonzero locally trivial class in the inert case: the
/// homomorphism with phi(h1) = v and phi(h2) = 0 on the kernel generators,
/// extended by zero on the chosen reflection. v is a nonzero G-fixed vector
/// of V[p]: (0, p) for the trivial and diag(-1,1) images, (p, 0) for
/// diag(1,-1).
pub fn inert_witness_cocycle(
    p: u64,
    delta: i64,
    image: InertImage,
) -> Result<Cocycle, CohomologyError> {
    let params = CartanParams::new(p, 2, delta)?;
    if params.delta_class() != DeltaClass::NonsquareUnit {
        return Err(CohomologyError::SquareDelta(params.delta().value()));
    }
    let modulus = params.modulus();
    let group = inert_full_subgroup(p, delta, image)?;
    let v = match image {
        InertImage::Trivial | InertImage::Sigma1 => Vector2::from_u64(0, p, modulus),
        InertImage::Sigma2 => Vector2::from_u64(p, 0, modulus),
    };
    if group.elements().iter().any(|g| g.apply(&v) != v) {
        return Err(CohomologyError::NoFixedVector);
    }
    let zero = Vector2::zero(modulus);
    let gen_values: Vec<Vector2> = group
        .generators()
        .iter()
        .map(|g| {
            if *g == one_plus_p_scalar(modulus) {
                v
            } else {
                zero
            }
        })
        .collect();
    Cocycle::from_generator_values(&group, &gen_values)
}

/// The full subgroup of N_{delta, p^2} with mod-p image [[1,*],[0,±1]] in
/// the ramified case: generated by diag(1,-1), [[1,1],[delta,1]] and
/// diag(1+p, 1+p).
pub fn ramified_full_subgroup(p: u64, delta: i64) -> Result<MatGroup, CohomologyError> {
    let params = CartanParams::new(p, 2, delta)?;
    let modulus = params.modulus();
    let gens = [
        sigma2(modulus),
        cartan_unipotent(modulus, params.delta()),
        one_plus_p_scalar(modulus),
    ];
    Ok(closure(&gens, modulus)?)
}

/// The explicit nonzero locally trivial class in the ramified case, inflated
/// from the dihedral quotient G/H of order 2p:
///
/// sigma^a g^b  ->  p * ( b(b-1)/2 , (-1)^a b + (1 + (-1)^(a+1))/2 ).
pub fn ramified_witness_cocycle(p: u64, delta: i64) -> Result<Cocycle, CohomologyError> {
    let params = CartanParams::new(p, 2, delta)?;
    let dval = params.delta().value();
    if dval % p != 0 || dval % (p * p) == 0 {
        return Err(CohomologyError::BadDelta(dval));
    }
    let modulus = params.modulus();
    let group = ramified_full_subgroup(p, delta)?;
    let sigma = sigma2(modulus);
    let g = cartan_unipotent(modulus, params.delta());

    // H = <h, g^p> is the kernel of reduction mod p; the cochain is constant
    // on cosets sigma^a g^b H.
    let kernel = crate::matgroup::reduction_kernel(&group, 1)?;
    let elems = group.elements();
    let mut values: Vec<Option<Vector2>> = vec![None; elems.len()];
    for a in 0..2u64 {
        for b in 0..p {
            let rep = sigma.pow(a).mul(&g.pow(b));
            let half = (b as i64 * (b as i64 - 1)) / 2;
            let second = if a % 2 == 0 { b as i64 } else { 1 - b as i64 };
            let value = Vector2::new(
                Residue::from_i64(p as i64 * half, modulus),
                Residue::from_i64(p as i64 * second, modulus),
            );
            for hmem in kernel.elements() {
                let x = rep.mul(hmem);
                let idx = elems
                    .binary_search(&x)
                    .map_err(|_| CohomologyError::ElementNotInGroup(x.to_string()))?;
                values[idx] = Some(value);
            }
        }
    }
    if values.iter().any(Option::is_none) {
        return Err(CohomologyError::InconsistentGeneratorValues);
    }
    let cocycle = Cocycle {
        group: group.clone(),
        values: values.into_iter().map(Option::unwrap).collect(),
    };
    if !cocycle.is_valid() {
        return Err(CohomologyError::InconsistentGeneratorValues);
    }
    Ok(cocycle)
}
