use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Serialize a complex number as `{"re": x, "im": y}` instead of the
/// `[re, im]` tuple that num-complex emits by default.
pub mod complex_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: c.re, im: c.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let v = ReIm::deserialize(d)?;
        Ok(Complex64::new(v.re, v.im))
    }
}

/// `{"re","im"}` serialization for vectors of complex numbers.
pub mod complex_vec_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct ReIm {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|c| ReIm { re: c.re, im: c.im })
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let v = Vec::<ReIm>::deserialize(d)?;
        Ok(v.into_iter().map(|c| Complex64::new(c.re, c.im)).collect())
    }
}

/// Sign label of an exceptional-point branch: the ± of the λ_c pair and of
/// the coalesced eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn factor(&self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn other(&self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// A 2-component complex vector. Column semantics unless stated otherwise;
/// left eigenvectors reuse the same carrier with row semantics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CVector2 {
    #[serde(with = "complex_serde")]
    pub upper: Complex64,
    #[serde(with = "complex_serde")]
    pub lower: Complex64,
}

impl CVector2 {
    pub fn new(upper: Complex64, lower: Complex64) -> Self {
        Self { upper, lower }
    }

    pub fn is_finite(&self) -> bool {
        self.upper.is_finite() && self.lower.is_finite()
    }

    pub fn norm(&self) -> f64 {
        (self.upper.norm_sqr() + self.lower.norm_sqr()).sqrt()
    }

    /// Unconjugated componentwise product sum, the biorthogonal pairing.
    pub fn bilinear(&self, other: &CVector2) -> Complex64 {
        self.upper * other.upper + self.lower * other.lower
    }

    /// Hermitian inner product ⟨self|other⟩ (self conjugated).
    pub fn hermitian_dot(&self, other: &CVector2) -> Complex64 {
        self.upper.conj() * other.upper + self.lower.conj() * other.lower
    }

    pub fn scale(&self, c: Complex64) -> CVector2 {
        CVector2::new(self.upper * c, self.lower * c)
    }

    /// Unit-norm copy with the largest-magnitude component rotated to the
    /// positive real axis.
    pub fn normalized(&self) -> CVector2 {
        let n = self.norm();
        let big = if self.upper.norm() >= self.lower.norm() {
            self.upper
        } else {
            self.lower
        };
        let phase = if big.norm() > 0.0 {
            big.conj() / big.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.scale(phase / n)
    }

    /// Collinearity defect: 0 when the two vectors are complex multiples of
    /// each other, up to ~1 when orthogonal. Scale-invariant.
    pub fn collinearity_defect(&self, other: &CVector2) -> f64 {
        let cross = self.upper * other.lower - self.lower * other.upper;
        cross.norm() / (self.norm() * other.norm())
    }
}

/// A dense 2x2 complex matrix, the universal carrier for Hamiltonians,
/// unitaries and phase matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CMatrix2 {
    #[serde(with = "complex_serde")]
    pub a11: Complex64,
    #[serde(with = "complex_serde")]
    pub a12: Complex64,
    #[serde(with = "complex_serde")]
    pub a21: Complex64,
    #[serde(with = "complex_serde")]
    pub a22: Complex64,
}

impl CMatrix2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(d1, zero, zero, d2)
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// adj(M), satisfying M · adj(M) = adj(M) · M = det(M) · I.
    pub fn adjugate(&self) -> CMatrix2 {
        CMatrix2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    pub fn conj(&self) -> CMatrix2 {
        CMatrix2::new(
            self.a11.conj(),
            self.a12.conj(),
            self.a21.conj(),
            self.a22.conj(),
        )
    }

    pub fn adjoint(&self) -> CMatrix2 {
        CMatrix2::new(
            self.a11.conj(),
            self.a21.conj(),
            self.a12.conj(),
            self.a22.conj(),
        )
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.a11.norm_sqr() + self.a12.norm_sqr() + self.a21.norm_sqr() + self.a22.norm_sqr())
            .sqrt()
    }

    pub fn scale(&self, c: Complex64) -> CMatrix2 {
        CMatrix2::new(self.a11 * c, self.a12 * c, self.a21 * c, self.a22 * c)
    }

    pub fn mul_vec(&self, v: &CVector2) -> CVector2 {
        CVector2::new(
            self.a11 * v.upper + self.a12 * v.lower,
            self.a21 * v.upper + self.a22 * v.lower,
        )
    }

    /// Row-vector product v · M for left eigenvectors.
    pub fn vec_mul(&self, v: &CVector2) -> CVector2 {
        CVector2::new(
            v.upper * self.a11 + v.lower * self.a21,
            v.upper * self.a12 + v.lower * self.a22,
        )
    }

    pub fn commutator(&self, other: &CMatrix2) -> CMatrix2 {
        *self * *other - *other * *self
    }
}

impl Add for CVector2 {
    type Output = CVector2;
    fn add(self, rhs: CVector2) -> CVector2 {
        CVector2::new(self.upper + rhs.upper, self.lower + rhs.lower)
    }
}

impl Sub for CVector2 {
    type Output = CVector2;
    fn sub(self, rhs: CVector2) -> CVector2 {
        CVector2::new(self.upper - rhs.upper, self.lower - rhs.lower)
    }
}

impl Add for CMatrix2 {
    type Output = CMatrix2;
    fn add(self, rhs: CMatrix2) -> CMatrix2 {
        CMatrix2::new(
            self.a11 + rhs.a11,
            self.a12 + rhs.a12,
            self.a21 + rhs.a21,
            self.a22 + rhs.a22,
        )
    }
}

impl Sub for CMatrix2 {
    type Output = CMatrix2;
    fn sub(self, rhs: CMatrix2) -> CMatrix2 {
        CMatrix2::new(
            self.a11 - rhs.a11,
            self.a12 - rhs.a12,
            self.a21 - rhs.a21,
            self.a22 - rhs.a22,
        )
    }
}

impl Mul for CMatrix2 {
    type Output = CMatrix2;
    fn mul(self, rhs: CMatrix2) -> CMatrix2 {
        CMatrix2::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}

impl Neg for CMatrix2 {
    type Output = CMatrix2;
    fn neg(self) -> CMatrix2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
