//! Shared oracles for integration tests, independent of the library's
//! generator-parametrized cohomology path.

// Each test binary uses its own slice of these helpers.
#![allow(dead_code)]

use lgd_core::cohomology::GModule;
use lgd_core::matgroup::MatGroup;
use lgd_core::modarith::{Matrix, Residue, RowSpan};
use lgd_core::{cohomology, Mat2};

/// All-pairs cocycle solver: one unknown vector phi(g) per group element,
/// one consistency equation per pair (g, h). Feasible for |G| <= ~60.
pub struct NaiveH1 {
    pub z1: RowSpan,
    pub b1: RowSpan,
    pub lt: RowSpan,
}

pub fn naive_h1(group: &MatGroup) -> NaiveH1 {
    let modulus = group.modulus();
    let m = modulus.value();
    let elems = group.elements();
    let n = elems.len();
    let cols = 2 * n;
    let idx = |g: &Mat2| elems.binary_search(g).expect("closed under products");

    // phi(gh) - phi(g) - g.phi(h) = 0 for every pair.
    let mut rows: Vec<u64> = Vec::new();
    let mut nrows = 0usize;
    for (i, g) in elems.iter().enumerate() {
        for (j, h) in elems.iter().enumerate() {
            let k = idx(&g.mul(h));
            let ge = g.entries();
            for coord in 0..2 {
                let mut row = vec![0u64; cols];
                add_mod(&mut row[2 * k + coord], 1, m);
                sub_mod(&mut row[2 * i + coord], 1, m);
                // minus row `coord` of g acting on phi(h)
                sub_mod(&mut row[2 * j], ge[2 * coord], m);
                sub_mod(&mut row[2 * j + 1], ge[2 * coord + 1], m);
                rows.extend_from_slice(&row);
                nrows += 1;
            }
        }
    }
    let a = Matrix::from_raw(modulus, nrows, cols, rows);
    let zero = vec![Residue::zero(modulus); nrows];
    let z1 = lgd_core::modarith::solve_linear(&a, &zero)
        .expect("well-formed system")
        .expect("homogeneous systems are solvable")
        .kernel;

    // Coboundaries: x -> ((g - 1)x)_g for the two basis vectors of V.
    let b1_rows: Vec<Vec<u64>> = (0..2)
        .map(|t| {
            let mut row = Vec::with_capacity(cols);
            for g in elems {
                let e = g.entries();
                for s in 0..2 {
                    let mut v = e[2 * s + t] % m;
                    if s == t {
                        v = (v + m - 1) % m;
                    }
                    row.push(v);
                }
            }
            row
        })
        .collect();
    let b1 = RowSpan::from_rows(modulus, cols, b1_rows);

    // Locally trivial filter, one element at a time.
    let mut lt = z1.clone();
    for (i, g) in elems.iter().enumerate() {
        if g.is_identity() || lt.rank() == 0 {
            continue;
        }
        let e = g.entries();
        let w_rows = lt.rows().to_vec();
        let wn = w_rows.len();
        // Unknowns: coefficients c_1..c_wn and a vector y in V, subject to
        // sum_i c_i * w_i(g) - (g - 1) y = 0.
        let mut data: Vec<u64> = Vec::new();
        for coord in 0..2 {
            let mut row = vec![0u64; wn + 2];
            for (ci, w) in w_rows.iter().enumerate() {
                row[ci] = w[2 * i + coord] % m;
            }
            for s in 0..2 {
                let mut v = e[2 * coord + s] % m;
                if coord == s {
                    v = (v + m - 1) % m;
                }
                row[wn + s] = (m - v) % m;
            }
            data.extend_from_slice(&row);
        }
        let a = Matrix::from_raw(modulus, 2, wn + 2, data);
        let zero = vec![Residue::zero(modulus); 2];
        let kernel = lgd_core::modarith::solve_linear(&a, &zero)
            .expect("well-formed")
            .expect("homogeneous")
            .kernel;
        let new_rows: Vec<Vec<u64>> = kernel
            .rows()
            .iter()
            .map(|coeffs| {
                let mut acc = vec![0u64; lt.cols()];
                for (c, w) in coeffs[..wn].iter().zip(&w_rows) {
                    for (a, &x) in acc.iter_mut().zip(w) {
                        *a = (*a + x * c) % m;
                    }
                }
                acc
            })
            .collect();
        lt = RowSpan::from_rows(modulus, lt.cols(), new_rows);
    }

    NaiveH1 { z1, b1, lt }
}

fn add_mod(slot: &mut u64, v: u64, m: u64) {
    *slot = (*slot + v) % m;
}

fn sub_mod(slot: &mut u64, v: u64, m: u64) {
    *slot = (*slot + m - v % m) % m;
}

/// Elementary divisors of sup/sub, largest first, computed from the sizes of
/// the filtration (p^j * sup + sub) — a route independent of the Smith-form
/// presentation used by the library.
pub fn divisors_by_size(sup: &RowSpan, sub: &RowSpan) -> Vec<u64> {
    let modulus = sup.modulus();
    let nlev = modulus.n();
    let sub_size = sub.size_exponent();
    // r_j = log_p |p^j Q / p^(j+1) Q| counts divisors exceeding p^j.
    let layer = |j: u32| -> u64 {
        if j >= nlev {
            return 0;
        }
        sup.scale_p_pow(j).sum(sub).size_exponent() - sub_size
    };
    let mut divisors = Vec::new();
    for j in (1..=nlev).rev() {
        let multiplicity = layer(j - 1).saturating_sub(layer(j));
        for _ in 0..multiplicity {
            divisors.push(modulus.p_pow(j));
        }
    }
    divisors
}

pub fn naive_h1_divisors(group: &MatGroup) -> Vec<u64> {
    let nh = naive_h1(group);
    divisors_by_size(&nh.z1, &nh.b1)
}

pub fn naive_h1_star_divisors(group: &MatGroup) -> Vec<u64> {
    let nh = naive_h1(group);
    divisors_by_size(&nh.lt, &nh.b1)
}

/// Engine-side divisors for comparison.
pub fn engine_divisors(group: &MatGroup) -> (Vec<u64>, Vec<u64>) {
    let module = GModule::natural(group.modulus());
    (
        cohomology::h1(group, &module).divisors,
        cohomology::h1_star(group, &module).divisors,
    )
}

/// Small deterministic xorshift generator for reproducible sampling.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

/// Kronecker symbol (d | k) for arbitrary integers, used by the analytic
/// class-number oracle.
pub fn kronecker(mut a: i64, mut b: i64) -> i64 {
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while b % 2 == 0 {
        b /= 2;
        v += 1;
    }
    let mut k = if v % 2 == 0 {
        1
    } else {
        match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        }
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        if a == 0 {
            return if b > 1 { 0 } else { k };
        }
        v = 0;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            match b.rem_euclid(8) {
                3 | 5 => k = -k,
                _ => {}
            }
        }
        // Quadratic reciprocity flip.
        if a.rem_euclid(4) == 3 && b.rem_euclid(4) == 3 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// Truncated analytic class-number formula:
/// h(D) = w * sqrt(|D|) / (2 pi) * L(1, chi_D), with L summed to
/// `terms` terms through a precomputed character table.
pub fn dirichlet_class_number(d: i64, terms: u64) -> u64 {
    assert!(d < 0);
    let q = (-d) as usize;
    let chi: Vec<i8> = (0..q).map(|r| kronecker(d, r as i64) as i8).collect();
    let mut sum = 0.0f64;
    let mut r = 1usize;
    for k in 1..=terms {
        let c = chi[r];
        if c != 0 {
            sum += c as f64 / k as f64;
        }
        r += 1;
        if r == q {
            r = 0;
        }
    }
    let w = match d {
        -3 => 6.0,
        -4 => 4.0,
        _ => 2.0,
    };
    let h = w * (q as f64).sqrt() / (2.0 * std::f64::consts::PI) * sum;
    h.round() as u64
}
