//! Arithmetic of imaginary quadratic orders and the minimal-degree table.
//!
//! For each odd prime p this module locates the cheapest CM order whose
//! divisibility obstruction is realized over a number field: degree
//! h(O) * (p^2-1)/u when p is inert in K, degree h(O) * (p-1)/2 when p
//! ramifies (u = 3 only for the j = 0 order, u = 2 otherwise). The split
//! case admits no counterexample, and orders with p | f carry no matching
//! sharpness construction, so both are excluded from the minimum.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modarith::{PrimePower, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CmError {
    #[error("p = {0} must be an odd prime")]
    EvenPrime(u64),
    #[error("{0} is not a valid imaginary quadratic discriminant")]
    BadDiscriminant(i64),
    #[error("u = {0} is not admissible here (u must be 2, or 3 for the j = 0 order)")]
    BadU(u64),
    #[error("no candidate order found within the scan bound")]
    NoWitness,
}

/// An order Z + f*O_K in an imaginary quadratic field of fundamental
/// discriminant delta_k, with conductor f.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadOrder {
    delta_k: i64,
    conductor: u64,
}

impl QuadOrder {
    pub fn new(delta_k: i64, conductor: u64) -> Result<Self, CmError> {
        if !is_fundamental(delta_k) || conductor == 0 {
            return Err(CmError::BadDiscriminant(delta_k));
        }
        Ok(QuadOrder { delta_k, conductor })
    }

    pub fn maximal(delta_k: i64) -> Result<Self, CmError> {
        QuadOrder::new(delta_k, 1)
    }

    pub fn fundamental_discriminant(&self) -> i64 {
        self.delta_k
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The discriminant f^2 * delta_k of the order itself.
    pub fn discriminant(&self) -> i64 {
        (self.conductor * self.conductor) as i64 * self.delta_k
    }
}

/// Behavior of the rational prime p relative to an order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitCase {
    Split,
    Inert,
    Ramified,
    DividesConductor,
}

impl SplitCase {
    pub fn label(&self) -> &'static str {
        match self {
            SplitCase::Split => "split",
            SplitCase::Inert => "inert",
            SplitCase::Ramified => "ramified",
            SplitCase::DividesConductor => "divides_conductor",
        }
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Kronecker symbol (d | p) for an odd prime p, via the Euler criterion.
pub fn kronecker_symbol(d: i64, p: u64) -> Result<i32, CmError> {
    if !is_odd_prime(p) {
        return Err(CmError::EvenPrime(p));
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let mp = PrimePower::new(p, 1).expect("odd prime");
    let euler = Residue::new(r, mp).pow((p - 1) / 2).value();
    Ok(if euler == 1 { 1 } else { -1 })
}

/// Splitting behavior of p in the order: conductor first, then the symbol.
pub fn splitting_case(order: &QuadOrder, p: u64) -> Result<SplitCase, CmError> {
    if !is_odd_prime(p) {
        return Err(CmError::EvenPrime(p));
    }
    if order.conductor % p == 0 {
        return Ok(SplitCase::DividesConductor);
    }
    Ok(match kronecker_symbol(order.delta_k, p)? {
        1 => SplitCase::Split,
        -1 => SplitCase::Inert,
        _ => SplitCase::Ramified,
    })
}

/// delta = Delta_K * f^2 / 4 as a residue mod p^n; this is the parameter of
/// the Cartan subgroup containing the relevant mod-p^n images.
pub fn delta_of_order(order: &QuadOrder, p: u64, n: u32) -> Result<Residue, CmError> {
    if !is_odd_prime(p) {
        return Err(CmError::EvenPrime(p));
    }
    let modulus = PrimePower::new(p, n).map_err(|_| CmError::EvenPrime(p))?;
    let dk = Residue::from_i64(order.delta_k, modulus);
    let f = Residue::from_i64(order.conductor as i64, modulus);
    let quarter = Residue::new(4, modulus)
        .inverse()
        .expect("4 is a unit mod odd p^n");
    Ok(dk * f * f * quarter)
}

/// Class number by counting reduced primitive binary quadratic forms
/// (a, b, c) with b^2 - 4ac = disc, |b| <= a <= c, gcd(a, b, c) = 1, and
/// b >= 0 whenever |b| = a or a = c.
pub fn class_number(disc: i64) -> Result<u64, CmError> {
    if disc >= 0 || disc.rem_euclid(4) > 1 {
        return Err(CmError::BadDiscriminant(disc));
    }
    let abs = (-disc) as u64;
    let mut count = 0u64;
    let mut a = 1u64;
    while 3 * a * a <= abs {
        let b_lo = -(a as i64);
        for b in b_lo..=(a as i64) {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            let den = 4 * a as i64;
            if num % den != 0 {
                continue;
            }
            let c = (num / den) as u64;
            if c < a {
                continue;
            }
            if (b.unsigned_abs() == a || a == c) && b < 0 {
                continue;
            }
            if gcd(gcd(a, b.unsigned_abs()), c) != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    Ok(count)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether d is a fundamental discriminant of an imaginary quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(-d),
        0 => {
            let q = d / 4;
            is_squarefree(-q) && matches!(q.rem_euclid(4), 2 | 3)
        }
        _ => false,
    }
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Per-order degree of the cheapest counterexample field, by splitting case:
/// (p^2-1)/u when inert, (p-1)/2 when ramified with p not dividing f, and
/// none otherwise (the split case obeys the principle; p | f has no matching
/// construction).
pub fn sharp_bound(case: SplitCase, p: u64, u: u64) -> Result<Option<u64>, CmError> {
    if u != 2 && u != 3 {
        return Err(CmError::BadU(u));
    }
    Ok(match case {
        SplitCase::Inert => {
            if (p * p - 1) % u != 0 {
                return Err(CmError::BadU(u));
            }
            Some((p * p - 1) / u)
        }
        SplitCase::Ramified => Some((p - 1) / 2),
        SplitCase::Split | SplitCase::DividesConductor => None,
    })
}

/// The order realizing d(p): parameters, class number, per-order bound and
/// the resulting total degree d = h * bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWitness {
    pub p: u64,
    #[serde(rename = "disc")]
    pub delta_k: i64,
    pub f: u64,
    pub case: SplitCase,
    pub u: u64,
    #[serde(rename = "h")]
    pub class_number: u64,
    pub bound: u64,
    #[serde(rename = "d")]
    pub degree: u64,
}

/// Default search radius for inert fundamental discriminants.
pub fn default_scan_bound(p: u64) -> u64 {
    (4 * p + 4).max(2000)
}

/// Minimal degree of a number field carrying a CM counterexample to
/// divisibility by a power of p, minimized over the two sharp families:
/// the ramified order of discriminant -p or -4p, and every inert
/// fundamental discriminant within the scan bound. Ties break toward the
/// smaller |Delta_K|.
pub fn min_degree(p: u64, scan_bound: u64) -> Result<DegreeWitness, CmError> {
    if !is_odd_prime(p) {
        return Err(CmError::EvenPrime(p));
    }
    let mut best: Option<DegreeWitness> = None;
    let mut consider = |w: DegreeWitness| match &best {
        Some(b)
            if (b.degree, b.delta_k.unsigned_abs(), b.f)
                <= (w.degree, w.delta_k.unsigned_abs(), w.f) => {}
        _ => best = Some(w),
    };

    // Ramified family: exactly one of -p, -4p is fundamental.
    let ram_disc = if p % 4 == 3 {
        -(p as i64)
    } else {
        -4 * p as i64
    };
    debug_assert!(is_fundamental(ram_disc));
    let h = class_number(ram_disc)?;
    let bound = sharp_bound(SplitCase::Ramified, p, 2)?.expect("ramified bound exists");
    consider(DegreeWitness {
        p,
        delta_k: ram_disc,
        f: 1,
        case: SplitCase::Ramified,
        u: 2,
        class_number: h,
        bound,
        degree: h * bound,
    });

    // Inert family over fundamental discriminants in the scan range.
    for abs in 3..=scan_bound {
        let d = -(abs as i64);
        if !is_fundamental(d) || kronecker_symbol(d, p)? != -1 {
            continue;
        }
        let u = if d == -3 { 3 } else { 2 };
        let bound = sharp_bound(SplitCase::Inert, p, u)?.expect("inert bound exists");
        let h = class_number(d)?;
        consider(DegreeWitness {
            p,
            delta_k: d,
            f: 1,
            case: SplitCase::Inert,
            u,
            class_number: h,
            bound,
            degree: h * bound,
        });
    }

    best.ok_or(CmError::NoWitness)
}

/// d(p) for every odd prime up to p_max.
pub fn degree_table(p_max: u64, scan_bound: Option<u64>) -> Result<Vec<DegreeWitness>, CmError> {
    let primes: Vec<u64> = (3..=p_max).filter(|&p| is_odd_prime(p)).collect();
    let rows = crate::par::map(primes, |&p| {
        min_degree(p, scan_bound.unwrap_or_else(|| default_scan_bound(p)))
    });
    rows.into_iter().collect()
}

/// The gonality lower bound 7(p^3-p)/1600 compared against p - 1; enough
/// gonality forces finiteness of the relevant low-degree points, which
/// happens for every prime p >= 17.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GonalityCheck {
    pub p: u64,
    pub numer: u64,
    pub denom: u64,
    pub passes: bool,
}

impl GonalityCheck {
    pub fn value(&self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

pub fn gonality_threshold(p: u64) -> GonalityCheck {
    let numer = 7 * (p * p * p - p);
    let denom = 1600;
    GonalityCheck {
        p,
        numer,
        denom,
        passes: numer >= denom * (p - 1),
    }
}
