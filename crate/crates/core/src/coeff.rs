//! Coefficient rings.
//!
//! Everything here is exact. Rings are unital but not assumed commutative;
//! the 2×2 integer matrices are the standing noncommutative example.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A unital, possibly noncommutative ring presented as operations on values.
///
/// Implementors are small descriptors (a modulus, a tag); the elements carry
/// the data. `equal` is part of the interface because the convolution product
/// skips zero coefficients.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.zero())
    }

    /// Image of an integer under the unique ring map from ℤ.
    fn from_int(&self, n: i64) -> Self::Elem {
        // double-and-add on the unit
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(&acc)
        } else {
            acc
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn equal(&self, a: &BigInt, b: &BigInt) -> bool {
        a == b
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
}

/// ℚ. `BigRational` keeps values in lowest terms with a positive denominator,
/// so structural equality is value equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn equal(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// ℤ/nℤ with residues kept in `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: BigInt,
}

impl IntegersMod {
    pub fn new(modulus: impl Into<BigInt>) -> Result<Self, RingError> {
        let modulus = modulus.into();
        if modulus < BigInt::from(2) {
            return Err(RingError::BadModulus(modulus.to_string()));
        }
        Ok(IntegersMod { modulus })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn residue(&self, v: &BigInt) -> BigInt {
        v.mod_floor(&self.modulus)
    }
}

impl Ring for IntegersMod {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.residue(&(a + b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.residue(&-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.residue(&(a * b))
    }
    fn equal(&self, a: &BigInt, b: &BigInt) -> bool {
        self.residue(a) == self.residue(b)
    }
    fn from_int(&self, n: i64) -> BigInt {
        self.residue(&BigInt::from(n))
    }
}

/// A 2×2 integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2(pub [BigInt; 4]);

impl Mat2 {
    pub fn from_i64(entries: [i64; 4]) -> Self {
        Mat2(entries.map(BigInt::from))
    }

    /// Matrix unit with a single 1 at (row, col).
    pub fn unit(row: usize, col: usize) -> Self {
        let mut e = [0i64; 4];
        e[2 * row + col] = 1;
        Mat2::from_i64(e)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntMatrices2;

impl Ring for IntMatrices2 {
    type Elem = Mat2;

    fn zero(&self) -> Mat2 {
        Mat2::from_i64([0, 0, 0, 0])
    }
    fn one(&self) -> Mat2 {
        Mat2::from_i64([1, 0, 0, 1])
    }
    fn add(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|i| &a.0[i] + &b.0[i]))
    }
    fn neg(&self, a: &Mat2) -> Mat2 {
        Mat2(std::array::from_fn(|i| -&a.0[i]))
    }
    fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let [a0, a1, a2, a3] = &a.0;
        let [b0, b1, b2, b3] = &b.0;
        Mat2([
            a0 * b0 + a1 * b2,
            a0 * b1 + a1 * b3,
            a2 * b0 + a3 * b2,
            a2 * b1 + a3 * b3,
        ])
    }
    fn equal(&self, a: &Mat2, b: &Mat2) -> bool {
        a == b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),
    #[error("unknown ring `{0}` (expected int, rat, mod:N or mat2)")]
    UnknownRing(String),
    #[error("coefficient {value} does not belong to ring {ring}")]
    WrongRing { value: String, ring: String },
    #[error("malformed coefficient literal `{0}`")]
    BadLiteral(String),
}

/// A coefficient value of any of the catalog rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod(BigInt),
    Mat(Mat2),
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(v) | Coeff::Mod(v) => write!(f, "{v}"),
            Coeff::Rat(v) => write!(f, "{v}"),
            Coeff::Mat(m) => write!(f, "{m}"),
        }
    }
}

/// Runtime choice among the catalog rings; used by the CLI, the FFI layer and
/// the acceptance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRing {
    Integers,
    Rationals,
    IntegersMod(IntegersMod),
    IntMatrices2,
}

impl AnyRing {
    /// Parses `int`, `rat`, `mod:N` or `mat2`.
    pub fn parse(spec: &str) -> Result<Self, RingError> {
        let spec = spec.trim();
        match spec {
            "int" | "integers" | "Z" => Ok(AnyRing::Integers),
            "rat" | "rationals" | "Q" => Ok(AnyRing::Rationals),
            "mat2" | "matrix" => Ok(AnyRing::IntMatrices2),
            _ => {
                let n = spec
                    .strip_prefix("mod:")
                    .ok_or_else(|| RingError::UnknownRing(spec.to_string()))?;
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| RingError::UnknownRing(spec.to_string()))?;
                Ok(AnyRing::IntegersMod(IntegersMod::new(n)?))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            AnyRing::Integers => "int".into(),
            AnyRing::Rationals => "rat".into(),
            AnyRing::IntegersMod(m) => format!("mod:{}", m.modulus()),
            AnyRing::IntMatrices2 => "mat2".into(),
        }
    }

    /// Checks that a value is an element of this ring, normalizing residues.
    pub fn coerce(&self, c: Coeff) -> Result<Coeff, RingError> {
        match (self, c) {
            (AnyRing::Integers, c @ Coeff::Int(_)) => Ok(c),
            (AnyRing::Rationals, c @ Coeff::Rat(_)) => Ok(c),
            (AnyRing::Rationals, Coeff::Int(v)) => Ok(Coeff::Rat(BigRational::from_integer(v))),
            (AnyRing::IntegersMod(m), Coeff::Mod(v) | Coeff::Int(v)) => Ok(Coeff::Mod(m.residue(&v))),
            (AnyRing::IntMatrices2, c @ Coeff::Mat(_)) => Ok(c),
            (AnyRing::IntMatrices2, Coeff::Int(v)) => {
                Ok(Coeff::Mat(Mat2([v.clone(), BigInt::zero(), BigInt::zero(), v])))
            }
            (ring, c) => Err(RingError::WrongRing {
                value: c.to_string(),
                ring: ring.name(),
            }),
        }
    }

    fn mismatch(&self, what: &str) -> ! {
        panic!("{what}: coefficient does not belong to ring {}", self.name())
    }
}

impl Ring for AnyRing {
    type Elem = Coeff;

    fn zero(&self) -> Coeff {
        match self {
            AnyRing::Integers => Coeff::Int(Integers.zero()),
            AnyRing::Rationals => Coeff::Rat(Rationals.zero()),
            AnyRing::IntegersMod(m) => Coeff::Mod(m.zero()),
            AnyRing::IntMatrices2 => Coeff::Mat(IntMatrices2.zero()),
        }
    }

    fn one(&self) -> Coeff {
        match self {
            AnyRing::Integers => Coeff::Int(Integers.one()),
            AnyRing::Rationals => Coeff::Rat(Rationals.one()),
            AnyRing::IntegersMod(m) => Coeff::Mod(m.one()),
            AnyRing::IntMatrices2 => Coeff::Mat(IntMatrices2.one()),
        }
    }

    fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (AnyRing::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(Integers.add(x, y)),
            (AnyRing::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(Rationals.add(x, y)),
            (AnyRing::IntegersMod(m), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(m.add(x, y)),
            (AnyRing::IntMatrices2, Coeff::Mat(x), Coeff::Mat(y)) => Coeff::Mat(IntMatrices2.add(x, y)),
            _ => self.mismatch("add"),
        }
    }

    fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (AnyRing::Integers, Coeff::Int(x)) => Coeff::Int(-x),
            (AnyRing::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (AnyRing::IntegersMod(m), Coeff::Mod(x)) => Coeff::Mod(m.neg(x)),
            (AnyRing::IntMatrices2, Coeff::Mat(x)) => Coeff::Mat(IntMatrices2.neg(x)),
            _ => self.mismatch("neg"),
        }
    }

    fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (AnyRing::Integers, Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (AnyRing::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (AnyRing::IntegersMod(m), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(m.mul(x, y)),
            (AnyRing::IntMatrices2, Coeff::Mat(x), Coeff::Mat(y)) => Coeff::Mat(IntMatrices2.mul(x, y)),
            _ => self.mismatch("mul"),
        }
    }

    fn equal(&self, a: &Coeff, b: &Coeff) -> bool {
        match (self, a, b) {
            (AnyRing::IntegersMod(m), Coeff::Mod(x), Coeff::Mod(y)) => m.equal(x, y),
            _ => a == b,
        }
    }

    fn from_int(&self, n: i64) -> Coeff {
        match self {
            AnyRing::Integers => Coeff::Int(BigInt::from(n)),
            AnyRing::Rationals => Coeff::Rat(Rationals.from_int(n)),
            AnyRing::IntegersMod(m) => Coeff::Mod(m.from_int(n)),
            AnyRing::IntMatrices2 => Coeff::Mat(Mat2::from_i64([n, 0, 0, n])),
        }
    }
}

/// One failed ring law together with the sampled elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub witness: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.law, self.witness.join(", "))
    }
}

/// Checks the ring laws on every pair and triple drawn from `samples`.
/// An empty result means every law held.
pub fn check_ring_axioms<R: Ring>(ring: &R, samples: &[R::Elem]) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let zero = ring.zero();
    let one = ring.one();
    let mut fail = |law, w: &[&R::Elem]| {
        out.push(AxiomViolation {
            law,
            witness: w.iter().map(|e| e.to_string()).collect(),
        })
    };

    for a in samples {
        if !ring.equal(&ring.add(a, &zero), a) {
            fail("additive identity", &[a]);
        }
        if !ring.is_zero(&ring.add(a, &ring.neg(a))) {
            fail("additive inverse", &[a]);
        }
        if !ring.equal(&ring.mul(a, &one), a) || !ring.equal(&ring.mul(&one, a), a) {
            fail("multiplicative identity", &[a]);
        }
        for b in samples {
            if !ring.equal(&ring.add(a, b), &ring.add(b, a)) {
                fail("additive commutativity", &[a, b]);
            }
            for c in samples {
                let l = ring.add(&ring.add(a, b), c);
                let r = ring.add(a, &ring.add(b, c));
                if !ring.equal(&l, &r) {
                    fail("additive associativity", &[a, b, c]);
                }
                let l = ring.mul(&ring.mul(a, b), c);
                let r = ring.mul(a, &ring.mul(b, c));
                if !ring.equal(&l, &r) {
                    fail("multiplicative associativity", &[a, b, c]);
                }
                let l = ring.mul(a, &ring.add(b, c));
                let r = ring.add(&ring.mul(a, b), &ring.mul(a, c));
                if !ring.equal(&l, &r) {
                    fail("left distributivity", &[a, b, c]);
                }
                let l = ring.mul(&ring.add(a, b), c);
                let r = ring.add(&ring.mul(a, c), &ring.mul(b, c));
                if !ring.equal(&l, &r) {
                    fail("right distributivity", &[a, b, c]);
                }
            }
        }
    }
    out
}

/// Returns the first sampled pair with `a·b ≠ b·a`, if any.
pub fn commutativity_witness<R: Ring>(ring: &R, samples: &[R::Elem]) -> Option<(R::Elem, R::Elem)> {
    samples.iter().find_map(|a| {
        samples
            .iter()
            .find(|b| !ring.equal(&ring.mul(a, b), &ring.mul(b, a)))
            .map(|b| (a.clone(), b.clone()))
    })
}

/// Parses a coefficient literal for `ring`: `"-3"`, `"p/q"`, or
/// `"a,b,c,d"` for matrices. Used by the expression language.
pub fn parse_coeff_literal(ring: &AnyRing, s: &str) -> Result<Coeff, RingError> {
    let bad = || RingError::BadLiteral(s.to_string());
    let s = s.trim();
    match ring {
        AnyRing::Rationals => {
            let v = match s.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                    if q.is_zero() {
                        return Err(bad());
                    }
                    BigRational::new(p, q)
                }
                None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
            };
            Ok(Coeff::Rat(v))
        }
        AnyRing::IntMatrices2 if s.contains(',') => {
            let parts: Vec<BigInt> = s
                .split(',')
                .map(|p| p.trim().parse::<BigInt>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            let entries: [BigInt; 4] = parts.try_into().map_err(|_| bad())?;
            Ok(Coeff::Mat(Mat2(entries)))
        }
        _ => {
            let v: BigInt = s.parse().map_err(|_| bad())?;
            ring.coerce(Coeff::Int(v))
        }
    }
}

/// Short form used when rendering terms: negative or fractional values are
/// parenthesized.
pub(crate) fn render_coeff(c: &impl fmt::Display) -> String {
    let s = c.to_string();
    if s.starts_with('-') || s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}
