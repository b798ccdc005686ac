//! The generalized quaternion algebra `H_{Z_m}(α, β)`.
//!
//! Basis `{1, i, j, k}` (`e2 = i`, `e3 = j`, `e4 = k`) with
//!
//! ```text
//!  ·  |  1    i     j     k
//! ----+----------------------
//!  1  |  1    i     j     k
//!  i  |  i    α     k     αj
//!  j  |  j   -k     β    -βi
//!  k  |  k  -αj    βi   -αβ
//! ```
//!
//! and norm `n(x) = x1² - αx2² - βx3² + αβx4² = x·x̄`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::modarith::{
    add_mod, check_modulus, is_prime, mul_mod, neg_mod, reduce_signed, require_odd_prime,
    require_prime, sub_mod, two_square_root_of_minus_one, Residue,
};
use crate::par;

/// Largest prime accepted by the brute-force census (`p⁴` elements).
pub const MAX_BRUTE_FORCE_PRIME: u64 = 23;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuatAlgebra {
    modulus: u64,
    alpha: u64,
    beta: u64,
}

impl QuatAlgebra {
    pub fn new(modulus: u64, alpha: i64, beta: i64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(QuatAlgebra {
            modulus,
            alpha: reduce_signed(alpha as i128, modulus),
            beta: reduce_signed(beta as i128, modulus),
        })
    }

    /// `H_{Z_m}(-1, -1)`.
    pub fn hamilton(modulus: u64) -> Result<Self> {
        Self::new(modulus, -1, -1)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn alpha(&self) -> Residue {
        Residue::from_canonical(self.alpha, self.modulus)
    }

    pub fn beta(&self) -> Residue {
        Residue::from_canonical(self.beta, self.modulus)
    }

    pub fn is_hamilton_type(&self) -> bool {
        let minus_one = self.modulus - 1;
        self.alpha == minus_one && self.beta == minus_one
    }

    pub fn element(&self, coords: [i64; 4]) -> Quaternion {
        Quaternion {
            coords: coords.map(|c| reduce_signed(c as i128, self.modulus)),
            algebra: *self,
        }
    }

    /// Builds an element from coordinates already in `[0, m)`.
    pub fn element_canonical(&self, coords: [u64; 4]) -> Result<Quaternion> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.modulus) {
            return Err(Error::Domain(format!(
                "coordinate {c} is not reduced modulo {}",
                self.modulus
            )));
        }
        Ok(Quaternion {
            coords,
            algebra: *self,
        })
    }

    pub fn from_residues(&self, coords: [Residue; 4]) -> Result<Quaternion> {
        for c in coords {
            if c.modulus() != self.modulus {
                return Err(Error::ModulusMismatch {
                    left: self.modulus,
                    right: c.modulus(),
                });
            }
        }
        Ok(Quaternion {
            coords: coords.map(Residue::value),
            algebra: *self,
        })
    }

    pub fn zero(&self) -> Quaternion {
        self.element([0; 4])
    }

    pub fn one(&self) -> Quaternion {
        self.element([1, 0, 0, 0])
    }

    /// Basis element `1, i, j, k` for `index = 0..4`.
    pub fn basis(&self, index: usize) -> Quaternion {
        let mut coords = [0i64; 4];
        coords[index] = 1;
        self.element(coords)
    }

    pub fn size(&self) -> u128 {
        (self.modulus as u128).pow(4)
    }

    /// Element number `index` of the row-major enumeration of all `m⁴`
    /// elements, `x1` varying slowest.
    pub fn element_at(&self, mut index: u64) -> Quaternion {
        let m = self.modulus;
        let mut coords = [0u64; 4];
        for c in coords.iter_mut().rev() {
            *c = index % m;
            index /= m;
        }
        Quaternion {
            coords,
            algebra: *self,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quaternion {
    coords: [u64; 4],
    algebra: QuatAlgebra,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Zero,
    Unit,
    ZeroDivisor,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Zero => "Zero",
            Verdict::Unit => "Unit",
            Verdict::ZeroDivisor => "ZeroDivisor",
        }
    }

    pub fn is_unit(self) -> bool {
        self == Verdict::Unit
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub norm_value: Residue,
}

impl Quaternion {
    pub fn algebra(&self) -> QuatAlgebra {
        self.algebra
    }

    pub fn modulus(&self) -> u64 {
        self.algebra.modulus
    }

    pub fn coords(&self) -> [u64; 4] {
        self.coords
    }

    pub fn coordinates(&self) -> [Residue; 4] {
        let m = self.modulus();
        self.coords.map(|c| Residue::from_canonical(c, m))
    }

    pub fn is_zero(&self) -> bool {
        self.coords == [0; 4]
    }

    fn same_algebra(&self, other: &Quaternion) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn zip_with(&self, other: &Quaternion, f: impl Fn(u64, u64, u64) -> u64) -> Quaternion {
        let m = self.modulus();
        let mut coords = [0u64; 4];
        for (c, (a, b)) in coords.iter_mut().zip(self.coords.iter().zip(other.coords)) {
            *c = f(*a, b, m);
        }
        Quaternion {
            coords,
            algebra: self.algebra,
        }
    }

    pub fn try_add(&self, other: &Quaternion) -> Result<Quaternion> {
        self.same_algebra(other)?;
        Ok(self.zip_with(other, add_mod))
    }

    pub fn try_sub(&self, other: &Quaternion) -> Result<Quaternion> {
        self.same_algebra(other)?;
        Ok(self.zip_with(other, sub_mod))
    }

    pub fn scale(&self, s: Residue) -> Result<Quaternion> {
        if s.modulus() != self.modulus() {
            return Err(Error::ModulusMismatch {
                left: self.modulus(),
                right: s.modulus(),
            });
        }
        let m = self.modulus();
        Ok(Quaternion {
            coords: self.coords.map(|c| mul_mod(c, s.value(), m)),
            algebra: self.algebra,
        })
    }

    /// Product expanded from the multiplication table.
    pub fn try_mul(&self, other: &Quaternion) -> Result<Quaternion> {
        self.same_algebra(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Quaternion) -> Quaternion {
        let m = self.modulus();
        let (alpha, beta) = (self.algebra.alpha, self.algebra.beta);
        let alpha_beta = mul_mod(alpha, beta, m);
        let [a1, a2, a3, a4] = self.coords;
        let [b1, b2, b3, b4] = other.coords;
        let mul = |x, y| mul_mod(x, y, m);
        let add = |x, y| add_mod(x, y, m);
        let sub = |x, y| sub_mod(x, y, m);

        let c1 = sub(
            add(add(mul(a1, b1), mul(alpha, mul(a2, b2))), mul(beta, mul(a3, b3))),
            mul(alpha_beta, mul(a4, b4)),
        );
        let c2 = add(
            add(mul(a1, b2), mul(a2, b1)),
            mul(beta, sub(mul(a4, b3), mul(a3, b4))),
        );
        let c3 = add(
            add(mul(a1, b3), mul(a3, b1)),
            mul(alpha, sub(mul(a2, b4), mul(a4, b2))),
        );
        let c4 = sub(add(add(mul(a1, b4), mul(a4, b1)), mul(a2, b3)), mul(a3, b2));
        Quaternion {
            coords: [c1, c2, c3, c4],
            algebra: self.algebra,
        }
    }

    /// `(x1, -x2, -x3, -x4)`.
    pub fn conjugate(&self) -> Quaternion {
        let m = self.modulus();
        let [a, b, c, d] = self.coords;
        Quaternion {
            coords: [a, neg_mod(b, m), neg_mod(c, m), neg_mod(d, m)],
            algebra: self.algebra,
        }
    }

    pub(crate) fn norm_raw(&self) -> u64 {
        let m = self.modulus();
        let (alpha, beta) = (self.algebra.alpha, self.algebra.beta);
        let [a, b, c, d] = self.coords.map(|x| mul_mod(x, x, m));
        let positive = add_mod(a, mul_mod(mul_mod(alpha, beta, m), d, m), m);
        let negative = add_mod(mul_mod(alpha, b, m), mul_mod(beta, c, m), m);
        sub_mod(positive, negative, m)
    }

    /// `x1² - αx2² - βx3² + αβx4²`.
    pub fn norm(&self) -> Residue {
        Residue::from_canonical(self.norm_raw(), self.modulus())
    }

    pub(crate) fn verdict_raw(&self) -> Verdict {
        if self.is_zero() {
            Verdict::Zero
        } else if self.norm_raw() == 0 {
            Verdict::ZeroDivisor
        } else {
            Verdict::Unit
        }
    }

    /// Zero, unit or zero divisor, decided by the norm. Requires a prime
    /// modulus: over a field `x·x̄ = n(x)·1` makes every element of nonzero
    /// norm a unit and every nonzero element of norm zero a zero divisor
    /// (annihilated by `x̄`).
    pub fn classify(&self) -> Result<Classification> {
        if !is_prime(self.modulus()) {
            return Err(Error::Unsupported(format!(
                "classification by norm needs a prime modulus, got {}",
                self.modulus()
            )));
        }
        Ok(Classification {
            verdict: self.verdict_raw(),
            norm_value: self.norm(),
        })
    }

    /// `x̄ / n(x)`.
    pub fn inverse(&self) -> Result<Quaternion> {
        let class = self.classify()?;
        if class.verdict != Verdict::Unit {
            return Err(Error::QuaternionNotInvertible(self.to_string()));
        }
        self.conjugate().scale(class.norm_value.inverse()?)
    }

    /// Short form without zero terms, e.g. `1+i+2j`.
    pub fn compact(&self) -> String {
        let mut out = String::new();
        for (c, unit) in self.coords.iter().zip(["", "i", "j", "k"]) {
            if *c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            if *c != 1 || unit.is_empty() {
                out.push_str(&c.to_string());
            }
            out.push_str(unit);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coords;
        write!(f, "{a} + {b}·i + {c}·j + {d}·k")
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    /// Panics if the operands live in different algebras.
    fn add(self, rhs: Quaternion) -> Quaternion {
        self.try_add(&rhs).expect("quaternions from different algebras")
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        self.try_sub(&rhs).expect("quaternions from different algebras")
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        self.try_mul(&rhs).expect("quaternions from different algebras")
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        let m = self.modulus();
        Quaternion {
            coords: self.coords.map(|c| neg_mod(c, m)),
            algebra: self.algebra,
        }
    }
}

/// A 2×2 matrix over `Z_m`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub entries: [[u64; 2]; 2],
    pub modulus: u64,
}

impl Mat2 {
    pub fn new(entries: [[i64; 2]; 2], modulus: u64) -> Self {
        Mat2 {
            entries: entries.map(|row| row.map(|e| reduce_signed(e as i128, modulus))),
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Mat2 {
            entries: [[0; 2]; 2],
            modulus,
        }
    }

    pub fn identity(modulus: u64) -> Self {
        Mat2::new([[1, 0], [0, 1]], modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.entries == [[0; 2]; 2]
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let m = self.modulus;
        let mut out = Mat2::zero(m);
        for r in 0..2 {
            for c in 0..2 {
                out.entries[r][c] = add_mod(self.entries[r][c], other.entries[r][c], m);
            }
        }
        out
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let m = self.modulus;
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Mat2::zero(m);
        for r in 0..2 {
            for c in 0..2 {
                out.entries[r][c] =
                    add_mod(mul_mod(a[r][0], b[0][c], m), mul_mod(a[r][1], b[1][c], m), m);
            }
        }
        out
    }

    pub fn scale(&self, s: u64) -> Mat2 {
        let m = self.modulus;
        Mat2 {
            entries: self.entries.map(|row| row.map(|e| mul_mod(e, s, m))),
            modulus: m,
        }
    }

    pub fn det(&self) -> Residue {
        let m = self.modulus;
        let [[a, b], [c, d]] = self.entries;
        Residue::from_canonical(sub_mod(mul_mod(a, d, m), mul_mod(b, c, m), m), m)
    }
}

/// The split isomorphism `H_{Z_p}(-1, -1) → M_2(Z_p)` for an odd prime `p`.
///
/// `1 ↦ I`, `i ↦ [[a, b], [b, -a]]`, `j ↦ [[0, -1], [1, 0]]`, `k ↦ φ(i)φ(j)`
/// where `a² + b² ≡ -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitRep {
    algebra: QuatAlgebra,
    pub a: Residue,
    pub b: Residue,
    images: [Mat2; 4],
}

impl SplitRep {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedRepresentation(
                "H_{Z_2}(-1,-1) is commutative and not isomorphic to M_2(Z_2)".into(),
            ));
        }
        require_odd_prime(p)?;
        let (a, b) = two_square_root_of_minus_one(p)?;
        let (av, bv) = (a.value() as i64, b.value() as i64);
        let phi_i = Mat2::new([[av, bv], [bv, -av]], p);
        let phi_j = Mat2::new([[0, -1], [1, 0]], p);
        Ok(SplitRep {
            algebra: QuatAlgebra::hamilton(p)?,
            a,
            b,
            images: [Mat2::identity(p), phi_i, phi_j, phi_i.mul(&phi_j)],
        })
    }

    pub fn for_algebra(algebra: &QuatAlgebra) -> Result<Self> {
        if !algebra.is_hamilton_type() {
            return Err(Error::UnsupportedRepresentation(format!(
                "only α = β = -1 is supported, got ({}, {})",
                algebra.alpha(),
                algebra.beta()
            )));
        }
        Self::new(algebra.modulus())
    }

    pub fn images(&self) -> [Mat2; 4] {
        self.images
    }

    pub fn apply(&self, x: &Quaternion) -> Result<Mat2> {
        if x.algebra != self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let p = self.algebra.modulus();
        Ok(self
            .images
            .iter()
            .zip(x.coords)
            .fold(Mat2::zero(p), |acc, (img, c)| acc.add(&img.scale(c))))
    }
}

pub fn matrix_rep(x: &Quaternion) -> Result<Mat2> {
    SplitRep::for_algebra(&x.algebra())?.apply(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    Formula,
    BruteForce,
}

/// `p³ + p² - p`, evaluated without any restriction on `p`.
pub fn census_formula_value(p: u64) -> u64 {
    p * p * p + p * p - p
}

fn check_brute_force(p: u64) -> Result<QuatAlgebra> {
    require_prime(p)?;
    if p > MAX_BRUTE_FORCE_PRIME {
        return Err(Error::ResourceLimit {
            what: "brute-force census prime",
            requested: p,
            limit: MAX_BRUTE_FORCE_PRIME,
        });
    }
    QuatAlgebra::hamilton(p)
}

fn non_units_with_x1(algebra: &QuatAlgebra, x1: u64) -> u64 {
    let m = algebra.modulus();
    let block = m * m * m;
    (x1 * block..(x1 + 1) * block)
        .filter(|&i| !algebra.element_at(i).verdict_raw().is_unit())
        .count() as u64
}

/// Number of non-invertible elements (0 included) of `H_{Z_p}(-1,-1)`,
/// one pass on the calling thread.
pub fn census_brute_force_sequential(p: u64) -> Result<u64> {
    let algebra = check_brute_force(p)?;
    Ok(par::sum_range_sequential(0..p, |x1| non_units_with_x1(&algebra, x1)))
}

/// Same count with the enumeration partitioned by `x1` across rayon workers.
#[cfg(feature = "parallel")]
pub fn census_brute_force_parallel(p: u64) -> Result<u64> {
    let algebra = check_brute_force(p)?;
    Ok(par::sum_range_parallel(0..p, |x1| non_units_with_x1(&algebra, x1)))
}

pub fn census_brute_force(p: u64) -> Result<u64> {
    let algebra = check_brute_force(p)?;
    Ok(par::sum_range(0..p, |x1| non_units_with_x1(&algebra, x1)))
}

pub fn zero_divisor_census(p: u64, mode: CensusMode) -> Result<u64> {
    match mode {
        CensusMode::Formula => {
            require_odd_prime(p)?;
            Ok(census_formula_value(p))
        }
        CensusMode::BruteForce => census_brute_force(p),
    }
}
