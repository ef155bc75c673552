//! Exact-arithmetic domain model for prime 3-manifold pieces.
//!
//! Prime pieces enter as named spherical families, normalized Seifert
//! invariants, torus-bundle monodromies, or opaque geometry tags. The module
//! supplies the integer invariants the degree machinery consumes: the
//! fundamental-group order of a spherical piece, the `alpha` invariant
//! (product of exceptional-fiber indices) of an `H^2 x E^1` piece, the
//! orbifold Euler characteristic, and the Seifert Euler number.
//!
//! All values are immutable after construction and all operations are pure;
//! arithmetic is exact (big integers and big rationals, no floating point).
//!
//! Convention: Seifert data is normalized to `0 < b_i < a_i` by transferring
//! the integer parts of the twists into `euler_b`, and the Euler number is
//! `e = -(b + sum(b_i / a_i))`. This is one standard choice; it is documented
//! here rather than claimed to match any particular census.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Invariant violations raised by the smart constructors in this module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("lens space requires p >= 1 (got p={p})")]
    LensOrder { p: BigInt },
    #[error("lens space requires 0 <= q < p (got p={p}, q={q})")]
    LensRange { p: BigInt, q: BigInt },
    #[error("lens space requires gcd(p,q) = 1 (got gcd = {gcd})")]
    LensCoprime { gcd: BigUint },
    #[error("prism manifold requires n >= 1 (got n={n})")]
    PrismOrder { n: BigInt },
    #[error("cyclic factor must be >= 1 (got m={m})")]
    CyclicRange { m: BigInt },
    #[error("cyclic factor must be coprime to the base group order (gcd({m}, {order}) = {gcd})")]
    CyclicCoprime {
        m: BigUint,
        order: BigUint,
        gcd: BigUint,
    },
    #[error("base genus must be >= 0 (got {genus})")]
    GenusRange { genus: BigInt },
    #[error("exceptional fiber index must be >= 2 (got a={a})")]
    FiberIndex { a: BigInt },
    #[error("exceptional fiber requires gcd(a,b) = 1 (got a={a}, b={b})")]
    FiberCoprime { a: BigUint, b: BigInt },
    #[error(
        "Seifert data describes a spherical space form; \
         use a named spherical family (lens/prism/tet/oct/ico) instead"
    )]
    SphericalSeifert,
    #[error("torus-bundle monodromy must have determinant +1 (got {det})")]
    Determinant { det: BigInt },
    #[error("a connected sum needs at least one prime factor")]
    EmptyExpression,
}

impl ModelError {
    /// Stable name of the violated invariant, surfaced in parse diagnostics.
    pub fn constraint_name(&self) -> &'static str {
        match self {
            ModelError::LensOrder { .. } => "p>=1",
            ModelError::LensRange { .. } => "0<=q<p",
            ModelError::LensCoprime { .. } => "gcd(p,q)=1",
            ModelError::PrismOrder { .. } => "n>=1",
            ModelError::CyclicRange { .. } => "m>=1",
            ModelError::CyclicCoprime { .. } => "gcd(m,|pi1|)=1",
            ModelError::GenusRange { .. } => "genus>=0",
            ModelError::FiberIndex { .. } => "a>=2",
            ModelError::FiberCoprime { .. } => "gcd(a,b)=1",
            ModelError::SphericalSeifert => "use-named-spherical-family",
            ModelError::Determinant { .. } => "det=+1",
            ModelError::EmptyExpression => "nonempty-expression",
        }
    }
}

/// One of the named spherical space-form families with a known group order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SphericalBase {
    /// Lens space L(p, q); |pi1| = p. The parameter q does not change the
    /// order but is retained to identify the piece.
    Lens { p: BigUint, q: BigUint },
    /// Prism manifold over the binary dihedral group of order 4n.
    Prism { n: BigUint },
    /// Binary tetrahedral quotient, |pi1| = 24.
    BinaryTetrahedral,
    /// Binary octahedral quotient, |pi1| = 48.
    BinaryOctahedral,
    /// Binary icosahedral quotient (the Poincare sphere), |pi1| = 120.
    BinaryIcosahedral,
}

impl SphericalBase {
    pub fn lens(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ModelError> {
        let p = p.into();
        let q = q.into();
        if p < BigInt::one() {
            return Err(ModelError::LensOrder { p });
        }
        if q.is_negative() || q >= p {
            return Err(ModelError::LensRange { p, q });
        }
        let p = p.to_biguint().expect("checked nonnegative");
        let q = q.to_biguint().expect("checked nonnegative");
        let gcd = p.gcd(&q);
        if !gcd.is_one() {
            return Err(ModelError::LensCoprime { gcd });
        }
        Ok(SphericalBase::Lens { p, q })
    }

    pub fn prism(n: impl Into<BigInt>) -> Result<Self, ModelError> {
        let n = n.into();
        if n < BigInt::one() {
            return Err(ModelError::PrismOrder { n });
        }
        Ok(SphericalBase::Prism {
            n: n.to_biguint().expect("checked nonnegative"),
        })
    }

    /// Group order of the base family, by fixed table.
    pub fn order(&self) -> BigUint {
        match self {
            SphericalBase::Lens { p, .. } => p.clone(),
            SphericalBase::Prism { n } => BigUint::from(4u32) * n,
            SphericalBase::BinaryTetrahedral => BigUint::from(24u32),
            SphericalBase::BinaryOctahedral => BigUint::from(48u32),
            SphericalBase::BinaryIcosahedral => BigUint::from(120u32),
        }
    }
}

/// A spherical piece: a named base family extended by a coprime cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SphericalFamily {
    base: SphericalBase,
    cyclic_factor: BigUint,
}

impl SphericalFamily {
    /// Validates `m >= 1` and `gcd(m, |pi1(base)|) = 1`; the coprimality is
    /// what keeps the product order formula valid.
    pub fn new(base: SphericalBase, cyclic_factor: impl Into<BigInt>) -> Result<Self, ModelError> {
        let m = cyclic_factor.into();
        if m < BigInt::one() {
            return Err(ModelError::CyclicRange { m });
        }
        let m = m.to_biguint().expect("checked nonnegative");
        let order = base.order();
        let gcd = m.gcd(&order);
        if !gcd.is_one() {
            return Err(ModelError::CyclicCoprime { m, order, gcd });
        }
        Ok(SphericalFamily {
            base,
            cyclic_factor: m,
        })
    }

    /// The base family with no cyclic extension.
    pub fn plain(base: SphericalBase) -> Self {
        SphericalFamily {
            base,
            cyclic_factor: BigUint::one(),
        }
    }

    pub fn base(&self) -> &SphericalBase {
        &self.base
    }

    pub fn cyclic_factor(&self) -> &BigUint {
        &self.cyclic_factor
    }

    /// `|pi1|` of the piece: the table order of the base family times the
    /// cyclic factor.
    pub fn pi1_order(&self) -> BigUint {
        self.base.order() * &self.cyclic_factor
    }
}

/// An exceptional fiber in normalized form: index `a >= 2`, twist
/// `0 < b < a`, `gcd(a, b) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExceptionalFiber {
    index: BigUint,
    twist: BigUint,
}

impl ExceptionalFiber {
    pub fn index(&self) -> &BigUint {
        &self.index
    }

    pub fn twist(&self) -> &BigUint {
        &self.twist
    }
}

/// Normalized Seifert invariants of a closed orientable Seifert fibered
/// piece: base orientability, genus (crosscap count when non-orientable),
/// the integer obstruction `b`, and the exceptional fibers sorted by
/// `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeifertInvariants {
    base_orientable: bool,
    base_genus: BigUint,
    euler_b: BigInt,
    fibers: Vec<ExceptionalFiber>,
}

impl SeifertInvariants {
    /// Builds normalized data. Raw twists are reduced into `0 < b < a` with
    /// the integer parts transferred into `euler_b` (this leaves the Euler
    /// number unchanged), and fibers are sorted. Data whose geometry would be
    /// spherical (chi_orb > 0 with nonzero Euler number) is rejected:
    /// spherical pieces enter as named families with known group orders.
    pub fn new(
        base_orientable: bool,
        base_genus: impl Into<BigInt>,
        euler_b: impl Into<BigInt>,
        fibers: impl IntoIterator<Item = (BigInt, BigInt)>,
    ) -> Result<Self, ModelError> {
        let genus = base_genus.into();
        if genus.is_negative() {
            return Err(ModelError::GenusRange { genus });
        }
        let mut b0 = euler_b.into();
        let mut normalized = Vec::new();
        for (a, b) in fibers {
            if a < BigInt::from(2) {
                return Err(ModelError::FiberIndex { a });
            }
            let index = a.to_biguint().expect("checked >= 2");
            // b = k*a + r with 0 <= r < a; r = 0 would force gcd(a, b) = a.
            let (k, r) = b.div_mod_floor(&a);
            if r.is_zero() {
                return Err(ModelError::FiberCoprime { a: index, b });
            }
            let twist = r.to_biguint().expect("floor remainder is nonnegative");
            if !index.gcd(&twist).is_one() {
                return Err(ModelError::FiberCoprime { a: index, b });
            }
            b0 += k;
            normalized.push(ExceptionalFiber { index, twist });
        }
        normalized.sort();
        let s = SeifertInvariants {
            base_orientable,
            base_genus: genus.to_biguint().expect("checked nonnegative"),
            euler_b: b0,
            fibers: normalized,
        };
        if s.chi_orb().is_positive() && !s.euler_number().is_zero() {
            return Err(ModelError::SphericalSeifert);
        }
        Ok(s)
    }

    pub fn base_orientable(&self) -> bool {
        self.base_orientable
    }

    pub fn base_genus(&self) -> &BigUint {
        &self.base_genus
    }

    pub fn euler_b(&self) -> &BigInt {
        &self.euler_b
    }

    pub fn fibers(&self) -> &[ExceptionalFiber] {
        &self.fibers
    }

    /// Product of the exceptional-fiber indices; 1 for an empty list. For an
    /// `H^2 x E^1` piece this is the alpha invariant of its unique fibration.
    pub fn alpha(&self) -> BigUint {
        self.fibers
            .iter()
            .fold(BigUint::one(), |acc, f| acc * &f.index)
    }

    /// Orbifold Euler characteristic of the base:
    /// `2 - 2g - sum(1 - 1/a_i)` over an orientable base,
    /// `2 - g - sum(1 - 1/a_i)` over a non-orientable one.
    pub fn chi_orb(&self) -> BigRational {
        let genus = BigInt::from(self.base_genus.clone());
        let closed = if self.base_orientable {
            BigInt::from(2) - BigInt::from(2) * genus
        } else {
            BigInt::from(2) - genus
        };
        let mut chi = BigRational::from_integer(closed);
        for f in &self.fibers {
            let a = BigInt::from(f.index.clone());
            chi -= BigRational::one() - BigRational::new(BigInt::one(), a);
        }
        chi
    }

    /// Euler number of the fibration: `e = -(b + sum(b_i / a_i))`.
    pub fn euler_number(&self) -> BigRational {
        let mut total = BigRational::from_integer(self.euler_b.clone());
        for f in &self.fibers {
            total += BigRational::new(BigInt::from(f.twist.clone()), BigInt::from(f.index.clone()));
        }
        -total
    }
}

/// A 2x2 integer matrix of determinant +1 presenting the monodromy of an
/// orientation-preserving torus bundle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonodromyMatrix {
    // Row-major: [m11, m12, m21, m22].
    entries: [BigInt; 4],
}

impl MonodromyMatrix {
    pub fn new(
        m11: impl Into<BigInt>,
        m12: impl Into<BigInt>,
        m21: impl Into<BigInt>,
        m22: impl Into<BigInt>,
    ) -> Result<Self, ModelError> {
        let entries = [m11.into(), m12.into(), m21.into(), m22.into()];
        let det = &entries[0] * &entries[3] - &entries[1] * &entries[2];
        if !det.is_one() {
            return Err(ModelError::Determinant { det });
        }
        Ok(MonodromyMatrix { entries })
    }

    pub fn identity() -> Self {
        MonodromyMatrix::new(1, 0, 0, 1).expect("identity has determinant 1")
    }

    /// Row-major entries `[m11, m12, m21, m22]`.
    pub fn entries(&self) -> &[BigInt; 4] {
        &self.entries
    }

    pub fn trace(&self) -> BigInt {
        &self.entries[0] + &self.entries[3]
    }

    pub fn is_plus_or_minus_identity(&self) -> bool {
        let off_diag_zero = self.entries[1].is_zero() && self.entries[2].is_zero();
        off_diag_zero && self.entries[0] == self.entries[3] && self.entries[0].magnitude().is_one()
    }
}

/// One prime piece of a connected-sum target. Labels on tagged variants are
/// opaque identifiers; they never affect classification.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrimeDescriptor {
    Spherical(SphericalFamily),
    Seifert(SeifertInvariants),
    TorusBundle(MonodromyMatrix),
    TorusSemiBundle(String),
    NilOther(String),
    S2xS1,
    Hyperbolic(String),
    PslTilde(String),
    NontrivialGraph(String),
    MixedHyperbolicPieces(String),
}

/// A connected sum of prime pieces, recorded in input order. `normalize`
/// sorts the factors into the canonical order (by variant, then parameters).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ManifoldExpression {
    factors: Vec<PrimeDescriptor>,
}

impl ManifoldExpression {
    pub fn new(factors: Vec<PrimeDescriptor>) -> Result<Self, ModelError> {
        if factors.is_empty() {
            return Err(ModelError::EmptyExpression);
        }
        Ok(ManifoldExpression { factors })
    }

    pub fn single(piece: PrimeDescriptor) -> Self {
        ManifoldExpression {
            factors: vec![piece],
        }
    }

    pub fn factors(&self) -> &[PrimeDescriptor] {
        &self.factors
    }

    /// Canonical form with sorted factors.
    pub fn normalize(&self) -> ManifoldExpression {
        let mut factors = self.factors.clone();
        factors.sort();
        ManifoldExpression { factors }
    }

    pub fn is_normalized(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] <= w[1])
    }

    /// The connected sum N # N, with every factor doubled in place so the
    /// per-factor certificate assembly lines up with the factor list.
    pub fn doubled(&self) -> ManifoldExpression {
        ManifoldExpression {
            factors: self
                .factors
                .iter()
                .flat_map(|f| [f.clone(), f.clone()])
                .collect(),
        }
    }
}
