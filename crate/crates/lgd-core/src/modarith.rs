//! Exact arithmetic and linear algebra over the residue rings Z/p^n.
//!
//! Z/p^n has zero divisors, so plain Gaussian elimination does not give
//! canonical row spans or decidable membership. Everything here is built on
//! the Howell normal form instead: for each submodule of (Z/p^n)^c there is a
//! unique Howell basis, membership testing is a deterministic reduction, and
//! two equal submodules always produce identical rows. Quotients of one span
//! by another are presented by their elementary divisors (powers of p).

use std::fmt;

use thiserror::Error;

/// Errors raised by the residue-ring substrate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModArithError {
    #[error("modulus {0} is not an odd prime power in [3, 2^31]")]
    NotOddPrimePower(u64),
    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: u64, modulus: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands have different moduli ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("claimed subspan is not contained in the superspan")]
    NotContained,
}

/// An odd prime power p^n with 3 <= p^n <= 2^31, the only moduli we work over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    n: u32,
    value: u64,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self, ModArithError> {
        if p < 3 || p % 2 == 0 || !is_prime(p) || n == 0 {
            return Err(ModArithError::NotOddPrimePower(p));
        }
        let mut value: u64 = 1;
        for _ in 0..n {
            value = value
                .checked_mul(p)
                .ok_or(ModArithError::NotOddPrimePower(p))?;
            if value > (1 << 31) {
                return Err(ModArithError::NotOddPrimePower(value));
            }
        }
        Ok(PrimePower { p, n, value })
    }

    /// Recovers (p, n) from an odd prime power value.
    pub fn from_value(m: u64) -> Result<Self, ModArithError> {
        if m < 3 || m % 2 == 0 {
            return Err(ModArithError::NotOddPrimePower(m));
        }
        let mut p = 3;
        while p * p <= m {
            if m % p == 0 {
                break;
            }
            p += 2;
        }
        let p = if m % p == 0 { p } else { m };
        let mut n = 0;
        let mut rest = m;
        while rest % p == 0 {
            rest /= p;
            n += 1;
        }
        if rest != 1 {
            return Err(ModArithError::NotOddPrimePower(m));
        }
        PrimePower::new(p, n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// p^e for 0 <= e <= n.
    pub fn p_pow(&self, e: u32) -> u64 {
        debug_assert!(e <= self.n);
        let mut v = 1;
        for _ in 0..e {
            v *= self.p;
        }
        v
    }

    /// Same prime, level k <= n.
    pub fn reduce_level(&self, k: u32) -> PrimePower {
        debug_assert!(k >= 1 && k <= self.n);
        PrimePower::new(self.p, k).expect("reduced level stays a valid prime power")
    }

    /// p-adic valuation of x mod p^n, capped at n (val(0) = n).
    pub fn valuation(&self, x: u64) -> u32 {
        let x = x % self.value;
        if x == 0 {
            return self.n;
        }
        let mut v = 0;
        let mut x = x;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }
}

impl fmt::Debug for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.n)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Extended Euclid inverse of a modulo m, for gcd(a, m) = 1.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Canonical element of Z/p^n, stored as its least nonnegative representative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: PrimePower,
}

impl Residue {
    pub fn new(value: u64, modulus: PrimePower) -> Self {
        Residue {
            value: value % modulus.value,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: PrimePower) -> Self {
        let m = modulus.value as i64;
        Residue {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn zero(modulus: PrimePower) -> Self {
        Residue { value: 0, modulus }
    }

    pub fn one(modulus: PrimePower) -> Self {
        Residue {
            value: 1 % modulus.value,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        self.value % self.modulus.p != 0
    }

    pub fn valuation(&self) -> u32 {
        self.modulus.valuation(self.value)
    }

    pub fn pow(&self, mut e: u64) -> Residue {
        let m = self.modulus.value;
        let mut base = self.value;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Residue {
            value: acc,
            modulus: self.modulus,
        }
    }

    pub fn inverse(&self) -> Result<Residue, ModArithError> {
        unit_inverse(*self)
    }

    fn check_same(&self, other: &Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "residue arithmetic requires a common modulus"
        );
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.value)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl std::ops::Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.check_same(&rhs);
        Residue::new(self.value + rhs.value, self.modulus)
    }
}

impl std::ops::Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.check_same(&rhs);
        Residue::new(self.value + self.modulus.value - rhs.value, self.modulus)
    }
}

impl std::ops::Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.check_same(&rhs);
        Residue::new(self.value * rhs.value, self.modulus)
    }
}

impl std::ops::Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new(self.modulus.value - self.value, self.modulus)
    }
}

/// Multiplicative inverse of a unit mod p^n.
pub fn unit_inverse(a: Residue) -> Result<Residue, ModArithError> {
    match inv_mod(a.value, a.modulus.value) {
        Some(v) => Ok(Residue {
            value: v,
            modulus: a.modulus,
        }),
        None => Err(ModArithError::NonUnit {
            value: a.value,
            modulus: a.modulus.value,
        }),
    }
}

/// A pair of residues sharing one modulus: an element of V_n = Z/p^n x Z/p^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vector2 {
    x: Residue,
    y: Residue,
}

impl Vector2 {
    pub fn new(x: Residue, y: Residue) -> Self {
        x.check_same(&y);
        Vector2 { x, y }
    }

    pub fn from_u64(x: u64, y: u64, modulus: PrimePower) -> Self {
        Vector2 {
            x: Residue::new(x, modulus),
            y: Residue::new(y, modulus),
        }
    }

    pub fn zero(modulus: PrimePower) -> Self {
        Vector2 {
            x: Residue::zero(modulus),
            y: Residue::zero(modulus),
        }
    }

    pub fn x(&self) -> Residue {
        self.x
    }

    pub fn y(&self) -> Residue {
        self.y
    }

    pub fn modulus(&self) -> PrimePower {
        self.x.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn coords(&self) -> [u64; 2] {
        [self.x.value, self.y.value]
    }
}

impl std::ops::Add for Vector2 {
    type Output = Vector2;
    fn add(self, rhs: Vector2) -> Vector2 {
        Vector2 {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl std::ops::Sub for Vector2 {
    type Output = Vector2;
    fn sub(self, rhs: Vector2) -> Vector2 {
        Vector2 {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl fmt::Display for Vector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.value, self.y.value)
    }
}

/// Rectangular matrix of residues, row-major, all entries on one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    modulus: PrimePower,
    nrows: usize,
    ncols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn from_rows(rows: &[Vec<Residue>]) -> Result<Self, ModArithError> {
        let first = rows
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| ModArithError::DimensionMismatch("empty matrix".into()))?;
        let modulus = first.modulus;
        let ncols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(ModArithError::DimensionMismatch("ragged rows".into()));
            }
            for r in row {
                if r.modulus != modulus {
                    return Err(ModArithError::ModulusMismatch(
                        r.modulus.value,
                        modulus.value,
                    ));
                }
                data.push(r.value);
            }
        }
        Ok(Matrix {
            modulus,
            nrows: rows.len(),
            ncols,
            data,
        })
    }

    pub fn from_raw(modulus: PrimePower, nrows: usize, ncols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), nrows * ncols);
        let m = modulus.value;
        let data = data.into_iter().map(|x| x % m).collect();
        Matrix {
            modulus,
            nrows,
            ncols,
            data,
        }
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    /// A . v over Z/p^n.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ncols);
        let m = self.modulus.value;
        (0..self.nrows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a % m * (x % m)) % m)
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Howell normal form
// ---------------------------------------------------------------------------

/// Incremental Howell-form accumulator over Z/p^n.
///
/// Rows keep exactly one pivot per column, pivots normalized to p^e, pivot
/// columns strictly increasing, entries above a pivot reduced mod p^e, and
/// the span closed under the annihilator rows p^(n-e) * row. These conditions
/// make the basis unique for the module it spans.
pub(crate) struct HowellBuilder {
    modulus: PrimePower,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u32)>,
}

impl HowellBuilder {
    pub(crate) fn new(modulus: PrimePower, cols: usize) -> Self {
        HowellBuilder {
            modulus,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn pivot_row_for_col(&self, col: usize) -> Option<usize> {
        self.pivots.iter().position(|&(c, _)| c == col)
    }

    fn normalize(&self, row: &mut [u64], j: usize) -> u32 {
        let m = self.modulus.value;
        let e = self.modulus.valuation(row[j]);
        let unit = row[j] / self.modulus.p_pow(e);
        if unit != 1 {
            let inv = inv_mod(unit, m).expect("unit part is invertible");
            for x in row.iter_mut() {
                *x = *x * inv % m;
            }
        }
        e
    }

    pub(crate) fn insert(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        let m = self.modulus.value;
        let mut queue = vec![row];
        while let Some(mut row) = queue.pop() {
            while let Some(j) = row.iter().position(|&x| x % m != 0) {
                row.iter_mut().for_each(|x| *x %= m);
                let f = self.modulus.valuation(row[j]);
                match self.pivot_row_for_col(j) {
                    Some(i) if self.pivots[i].1 <= f => {
                        let e = self.pivots[i].1;
                        let c = row[j] / self.modulus.p_pow(e);
                        let basis = self.rows[i].clone();
                        for (x, &b) in row.iter_mut().zip(&basis) {
                            *x = (*x + (m - b % m) % m * (c % m)) % m;
                        }
                    }
                    Some(i) => {
                        // Strictly smaller valuation: the new row takes over the pivot.
                        let f = self.normalize(&mut row, j);
                        let old = std::mem::replace(&mut self.rows[i], row.clone());
                        self.pivots[i] = (j, f);
                        if f > 0 {
                            let ann = self.modulus.p_pow(self.modulus.n - f);
                            queue.push(row.iter().map(|&x| x * (ann % m) % m).collect());
                        }
                        queue.push(old);
                        break;
                    }
                    None => {
                        let f = self.normalize(&mut row, j);
                        let pos = self
                            .pivots
                            .iter()
                            .position(|&(c, _)| c > j)
                            .unwrap_or(self.rows.len());
                        self.rows.insert(pos, row.clone());
                        self.pivots.insert(pos, (j, f));
                        if f > 0 {
                            let ann = self.modulus.p_pow(self.modulus.n - f);
                            queue.push(row.iter().map(|&x| x * (ann % m) % m).collect());
                        }
                        break;
                    }
                }
            }
        }
    }

    /// Reduce entries above each pivot mod p^e; afterwards the basis is canonical.
    fn back_reduce(&mut self) {
        let m = self.modulus.value;
        for k in 0..self.rows.len() {
            let (jk, ek) = self.pivots[k];
            let pe = self.modulus.p_pow(ek);
            let below = self.rows[k].clone();
            for i in 0..k {
                let c = self.rows[i][jk] / pe;
                if c != 0 {
                    for (x, &b) in self.rows[i].iter_mut().zip(&below) {
                        *x = (*x + (m - b) * (c % m)) % m;
                    }
                }
            }
        }
    }

    pub(crate) fn finish(mut self) -> RowSpan {
        self.back_reduce();
        RowSpan {
            modulus: self.modulus,
            cols: self.cols,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

/// Canonical generating rows (Howell basis) of a submodule of (Z/p^n)^c.
///
/// Equal submodules always canonicalize to identical rows, so `RowSpan`
/// supports equality comparison and deterministic membership testing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpan {
    modulus: PrimePower,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u32)>,
}

impl RowSpan {
    pub fn zero(modulus: PrimePower, cols: usize) -> Self {
        RowSpan {
            modulus,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The full module (Z/p^n)^c.
    pub fn full(modulus: PrimePower, cols: usize) -> Self {
        let mut b = HowellBuilder::new(modulus, cols);
        for i in 0..cols {
            let mut row = vec![0; cols];
            row[i] = 1;
            b.insert(row);
        }
        b.finish()
    }

    pub fn from_rows<I>(modulus: PrimePower, cols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut b = HowellBuilder::new(modulus, cols);
        for row in rows {
            assert_eq!(
                row.len(),
                cols,
                "row length must equal the ambient dimension"
            );
            b.insert(row);
        }
        b.finish()
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// log_p of the number of elements in the span.
    pub fn size_exponent(&self) -> u64 {
        self.pivots
            .iter()
            .map(|&(_, e)| (self.modulus.n - e) as u64)
            .sum()
    }

    /// Number of elements, when it fits in u128.
    pub fn size(&self) -> u128 {
        let mut s: u128 = 1;
        for &(_, e) in &self.pivots {
            s *= (self.modulus.p_pow(self.modulus.n - e)) as u128;
        }
        s
    }

    /// Residual of v after reduction against the basis; zero iff v is in the span.
    fn reduce_vec(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus.value;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        for (row, &(j, e)) in self.rows.iter().zip(&self.pivots) {
            if v[j] != 0 && self.modulus.valuation(v[j]) >= e {
                let c = v[j] / self.modulus.p_pow(e);
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = (*x + (m - b) * (c % m)) % m;
                }
            }
        }
        v
    }

    /// Like `reduce_vec` but also returns the coefficients used per basis row.
    fn reduce_with_coeffs(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let m = self.modulus.value;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (k, (row, &(j, e))) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v[j] != 0 && self.modulus.valuation(v[j]) >= e {
                let c = v[j] / self.modulus.p_pow(e);
                coeffs[k] = c % m;
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = (*x + (m - b) * (c % m)) % m;
                }
            }
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce_vec(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspan_of(&self, other: &RowSpan) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Smallest span containing both operands.
    pub fn sum(&self, other: &RowSpan) -> RowSpan {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.cols, other.cols);
        let mut b = HowellBuilder::new(self.modulus, self.cols);
        for r in self.rows.iter().chain(other.rows.iter()) {
            b.insert(r.clone());
        }
        b.finish()
    }

    /// Span of p^k * self.
    pub fn scale_p_pow(&self, k: u32) -> RowSpan {
        let m = self.modulus.value;
        let f = self.modulus.p_pow(k.min(self.modulus.n)) % m;
        let mut b = HowellBuilder::new(self.modulus, self.cols);
        for r in &self.rows {
            b.insert(r.iter().map(|&x| x * f % m).collect());
        }
        b.finish()
    }

    /// Enumerates every element of the span; only sensible for small spans.
    pub fn enumerate_elements(&self) -> Vec<Vec<u64>> {
        let m = self.modulus.value;
        let mut out = vec![vec![0u64; self.cols]];
        for (row, &(_, e)) in self.rows.iter().zip(&self.pivots) {
            let reps = self.modulus.p_pow(self.modulus.n - e);
            let mut next = Vec::with_capacity(out.len() * reps as usize);
            for base in &out {
                for c in 0..reps {
                    let v: Vec<u64> = base
                        .iter()
                        .zip(row)
                        .map(|(&b, &r)| (b + r * c) % m)
                        .collect();
                    next.push(v);
                }
            }
            out = next;
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Coefficient vectors c with c . rows = 0 (the left kernel), as raw rows.
pub(crate) fn left_kernel(modulus: PrimePower, rows: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let k = rows.len();
    let mut b = HowellBuilder::new(modulus, cols + k);
    for (i, r) in rows.iter().enumerate() {
        let mut aug = Vec::with_capacity(cols + k);
        aug.extend_from_slice(r);
        aug.extend(std::iter::repeat(0).take(k));
        aug[cols + i] = 1;
        b.insert(aug);
    }
    let span = b.finish();
    span.rows
        .iter()
        .filter(|r| r[..cols].iter().all(|&x| x == 0))
        .map(|r| r[cols..].to_vec())
        .collect()
}

/// Particular solution and full kernel of A x = b over Z/p^n, if solvable.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<Residue>,
    pub kernel: RowSpan,
}

/// Solves A x = b over Z/p^n. `Ok(None)` means the system is inconsistent,
/// which is a legitimate outcome rather than an error.
pub fn solve_linear(a: &Matrix, b: &[Residue]) -> Result<Option<LinearSolution>, ModArithError> {
    if b.len() != a.nrows {
        return Err(ModArithError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.nrows,
            b.len()
        )));
    }
    for r in b {
        if r.modulus != a.modulus {
            return Err(ModArithError::ModulusMismatch(
                r.modulus.value,
                a.modulus.value,
            ));
        }
    }
    let rhs: Vec<u64> = b.iter().map(|r| r.value).collect();
    Ok(
        solve_raw(a.modulus, a.nrows, a.ncols, &a.data, &rhs).map(|(x, kernel)| LinearSolution {
            particular: x.into_iter().map(|v| Residue::new(v, a.modulus)).collect(),
            kernel,
        }),
    )
}

/// Raw-value solver: A is nrows x ncols row-major over Z/p^n.
///
/// Works on the augmented rows [column_i(A) | e_i]; every Howell row then
/// satisfies left = right . A^T, so rows with zero left part generate the
/// kernel and reducing [b | 0] yields a particular solution with certificate.
pub(crate) fn solve_raw(
    modulus: PrimePower,
    nrows: usize,
    ncols: usize,
    data: &[u64],
    b: &[u64],
) -> Option<(Vec<u64>, RowSpan)> {
    let m = modulus.value;
    let mut builder = HowellBuilder::new(modulus, nrows + ncols);
    for i in 0..ncols {
        let mut aug = vec![0u64; nrows + ncols];
        for r in 0..nrows {
            aug[r] = data[r * ncols + i] % m;
        }
        aug[nrows + i] = 1;
        builder.insert(aug);
    }
    let span = builder.finish();

    // Kernel: rows whose left block vanished.
    let mut kb = HowellBuilder::new(modulus, ncols);
    for r in &span.rows {
        if r[..nrows].iter().all(|&x| x == 0) {
            kb.insert(r[nrows..].to_vec());
        }
    }
    let kernel = kb.finish();

    // Particular solution: reduce [b | 0] against the span.
    let mut v: Vec<u64> = b.iter().map(|&x| x % m).collect();
    v.resize(nrows + ncols, 0);
    let reduced = span.reduce_vec(&v);
    if reduced[..nrows].iter().any(|&x| x != 0) {
        return None;
    }
    let x: Vec<u64> = reduced[nrows..].iter().map(|&s| (m - s % m) % m).collect();
    Some((x, kernel))
}

/// Elementary divisors of super/sub, largest first. Each divisor is a power
/// of p; their product equals the index of sub in super. An empty list means
/// the quotient is trivial.
pub fn quotient_invariants(sup: &RowSpan, sub: &RowSpan) -> Result<Vec<u64>, ModArithError> {
    Ok(quotient_presentation(sup, sub)?
        .into_iter()
        .map(|(d, _)| d)
        .collect())
}

/// Like `quotient_invariants` but also returns, for each divisor d = p^e, an
/// ambient vector of super whose class generates the corresponding cyclic
/// factor Z/d of the quotient.
#[allow(clippy::needless_range_loop)] // index juggling mirrors the matrix ops
pub(crate) fn quotient_presentation(
    sup: &RowSpan,
    sub: &RowSpan,
) -> Result<Vec<(u64, Vec<u64>)>, ModArithError> {
    if sup.modulus != sub.modulus {
        return Err(ModArithError::ModulusMismatch(
            sup.modulus.value,
            sub.modulus.value,
        ));
    }
    if sup.cols != sub.cols {
        return Err(ModArithError::DimensionMismatch(format!(
            "superspan has {} columns, subspan has {}",
            sup.cols, sub.cols
        )));
    }
    let modulus = sup.modulus;
    let m = modulus.value;
    let k = sup.rows.len();

    // Express each sub generator in super coordinates; failure to reduce to
    // zero means sub is not contained in super.
    let mut relations: Vec<Vec<u64>> = Vec::new();
    for r in &sub.rows {
        let (residual, coeffs) = sup.reduce_with_coeffs(r);
        if residual.iter().any(|&x| x != 0) {
            return Err(ModArithError::NotContained);
        }
        relations.push(coeffs);
    }
    // Order relations of the super generators themselves.
    for (i, &(_, e)) in sup.pivots.iter().enumerate() {
        if e > 0 {
            let mut row = vec![0u64; k];
            row[i] = modulus.p_pow(modulus.n - e);
            relations.push(row);
        }
    }

    // Smith normal form of the relation matrix over Z/p^n, tracking the
    // generator basis H through the column operations.
    let t = relations.len();
    let mut r = relations;
    let mut h: Vec<Vec<u64>> = sup.rows.clone();
    let mut divisors: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut s = 0usize;
    let mut col_of = (0..k).collect::<Vec<usize>>(); // logical column -> position in h

    while s < k {
        // Minimal-valuation entry in the remaining block.
        let mut best: Option<(usize, usize, u32)> = None;
        for i in s..t {
            for j in s..k {
                let x = r[i][j] % m;
                if x != 0 {
                    let v = modulus.valuation(x);
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((bi, bj, e)) = best else {
            break;
        };
        // Move pivot to (s, s).
        if bi != s {
            r.swap(bi, s);
        }
        if bj != s {
            for row in r.iter_mut() {
                row.swap(bj, s);
            }
            h.swap(col_of[bj], col_of[s]);
            col_of.swap(bj, s);
        }
        // Normalize pivot to p^e by scaling the relation row.
        let pe = modulus.p_pow(e);
        let unit = r[s][s] / pe;
        if unit != 1 {
            let inv = inv_mod(unit % m, m).expect("unit part invertible");
            for x in r[s].iter_mut() {
                *x = *x * inv % m;
            }
        }
        // Clear the pivot column (row ops; generators unaffected).
        for i in 0..t {
            if i != s && r[i][s] != 0 {
                debug_assert!(modulus.valuation(r[i][s]) >= e);
                let c = r[i][s] / pe;
                let pivot_row = r[s].clone();
                for (x, &pv) in r[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + (m - pv) * (c % m)) % m;
                }
            }
        }
        // Clear the pivot row (column ops; adjust generators).
        for j in s + 1..k {
            if r[s][j] != 0 {
                debug_assert!(modulus.valuation(r[s][j]) >= e);
                let c = r[s][j] / pe % m;
                for row in r.iter_mut() {
                    let sub_val = row[s] * c % m;
                    row[j] = (row[j] + m - sub_val) % m;
                }
                // col_j -= c * col_s  =>  h_s += c * h_j
                let hj = h[col_of[j]].clone();
                let hs = &mut h[col_of[s]];
                for (x, &y) in hs.iter_mut().zip(&hj) {
                    *x = (*x + y * c) % m;
                }
            }
        }
        divisors.push((pe, h[col_of[s]].clone()));
        s += 1;
    }
    // Columns never pivoted carry no relation: full cyclic factors Z/p^n.
    for j in s..k {
        divisors.push((m, h[col_of[j]].clone()));
    }

    divisors.retain(|&(d, _)| d > 1);
    divisors.sort_by_key(|d| std::cmp::Reverse(d.0));
    Ok(divisors)
}
