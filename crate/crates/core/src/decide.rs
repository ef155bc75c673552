//! Decision procedures and constructive witness certificates.
//!
//! Two decisions are implemented. `decide_exists_infinite` answers whether
//! some closed orientable domain M admits infinitely many mapping degrees
//! onto the target N: true exactly when every prime factor has an infinite
//! self-degree set. `decide_self_infinite` answers whether N itself does:
//! a prime target needs any infinite class; a composite target needs every
//! factor covered by S^3 or S^2 x E^1 (classes C1 and C5).
//!
//! When the first answer is yes, `build_witness` emits the explicit degree
//! family: with `B = 12 * prod |pi1(P_i)| * prod alpha(Q_j)`, every degree
//! `(B*l + 1)^4 + 1` is realized by a pi1-surjective map N # N -> N. The
//! certificate records the integer bookkeeping of the construction -- one
//! degree-`(B*l+1)^4` self-map per factor, one pinch step (double the piece,
//! gain exactly one degree, become pi1-surjective), and one equal-degree
//! connected-sum assembly -- which is precisely the part that is checkable
//! by desk arithmetic. The maps themselves are existence statements and are
//! not represented.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classify::{
    class_is_heuristic, classify_geometry, degree_class, geometry_note, normal_form, DegreeClass,
    FiniteReason, GeometryClass, NormalForm,
};
use crate::decimal::{DecInt, DecUint};
use crate::families::{combined_base, family_for_class};
use crate::manifold::{ManifoldExpression, PrimeDescriptor};
use crate::roots::{perfect_fourth_root, perfect_sqrt};

/// Classification row for one prime factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorVerdict {
    pub piece: PrimeDescriptor,
    pub geometry: GeometryClass,
    pub class: DegreeClass,
    pub geometry_note: Option<&'static str>,
    pub class_heuristic: bool,
}

impl FactorVerdict {
    fn of(piece: &PrimeDescriptor) -> Self {
        FactorVerdict {
            geometry: classify_geometry(piece),
            class: degree_class(piece),
            geometry_note: geometry_note(piece),
            class_heuristic: class_is_heuristic(piece),
            piece: piece.clone(),
        }
    }
}

/// Joint decision output for one connected-sum target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub exists_infinite: bool,
    pub self_infinite: bool,
    pub per_factor: Vec<FactorVerdict>,
}

impl Verdict {
    /// The factors whose finite degree sets block every witness family.
    pub fn blocking_factors(&self) -> impl Iterator<Item = &FactorVerdict> {
        self.per_factor.iter().filter(|f| f.class.is_finite())
    }
}

fn self_infinite_over(rows: &[FactorVerdict]) -> bool {
    if rows.len() == 1 {
        !rows[0].class.is_finite()
    } else {
        rows.iter().all(|f| {
            matches!(
                f.class,
                DegreeClass::C1Spherical { .. } | DegreeClass::C5S2xS1
            )
        })
    }
}

/// Decide whether some domain M has |D(M, N)| infinite, factor by factor.
/// The returned verdict also carries the self-map decision.
pub fn decide_exists_infinite(expr: &ManifoldExpression) -> Verdict {
    let per_factor: Vec<FactorVerdict> = expr.factors().iter().map(FactorVerdict::of).collect();
    Verdict {
        exists_infinite: per_factor.iter().all(|f| !f.class.is_finite()),
        self_infinite: self_infinite_over(&per_factor),
        per_factor,
    }
}

/// Decide whether |D(N)| is infinite. Prime targets: any infinite class.
/// Composite targets: every factor covered by S^3 or S^2 x E^1.
pub fn decide_self_infinite(expr: &ManifoldExpression) -> bool {
    decide_exists_infinite(expr).self_infinite
}

/// The four simultaneous presentations of a pre-shift witness degree d:
/// `d = C1*|pi1(P_i)| + 1 = C2*alpha(Q_j) + 1 = (2*C3+1)^2 = (12*C4+1)^4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourForms {
    pub d: BigInt,
    /// `(order, C1)` per spherical factor.
    pub c1: Vec<(BigUint, BigInt)>,
    /// `(alpha, C2)` per H^2 x E^1 factor.
    pub c2: Vec<(BigUint, BigInt)>,
    /// `C3` with `d = (2*C3+1)^2`; required when torus-like factors exist,
    /// reported whenever it holds.
    pub c3: Option<BigInt>,
    /// `C4` with `d = (12*C4+1)^4`; required when Nil-other factors exist,
    /// reported whenever it holds.
    pub c4: Option<BigInt>,
}

/// Raised when a required form fails; names the first failing form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("degree {d} has no {form} presentation")]
pub struct NotDecomposable {
    pub d: BigInt,
    pub form: String,
}

fn odd_square_parameter(d: &BigInt) -> Option<BigInt> {
    let root = perfect_sqrt(d)?;
    if root.is_odd() {
        Some((root - 1) / 2)
    } else {
        None
    }
}

fn mod12_fourth_parameter(d: &BigInt) -> Option<BigInt> {
    let root = perfect_fourth_root(d)?;
    let twelve = BigInt::from(12);
    for candidate in [root.clone(), -root] {
        if (&candidate - BigInt::one()).mod_floor(&twelve).is_zero() {
            return Some((candidate - BigInt::one()) / 12);
        }
    }
    None
}

/// Decompose `d` into the four forms demanded by the factor buckets of `nf`.
/// Forms for empty buckets are vacuously satisfied; the square and
/// fourth-power forms are still reported when they happen to hold.
pub fn four_forms(d: &BigInt, nf: &NormalForm) -> Result<FourForms, NotDecomposable> {
    let mut c1 = Vec::with_capacity(nf.spherical.len());
    for (_, order) in &nf.spherical {
        let modulus = BigInt::from(order.clone());
        let (quotient, remainder) = (d - BigInt::one()).div_mod_floor(&modulus);
        if !remainder.is_zero() {
            return Err(NotDecomposable {
                d: d.clone(),
                form: format!("C1 (d = C1*{order} + 1)"),
            });
        }
        c1.push((order.clone(), quotient));
    }
    let mut c2 = Vec::with_capacity(nf.h2xe1.len());
    for (_, alpha) in &nf.h2xe1 {
        let modulus = BigInt::from(alpha.clone());
        let (quotient, remainder) = (d - BigInt::one()).div_mod_floor(&modulus);
        if !remainder.is_zero() {
            return Err(NotDecomposable {
                d: d.clone(),
                form: format!("C2 (d = C2*{alpha} + 1)"),
            });
        }
        c2.push((alpha.clone(), quotient));
    }
    let c3 = odd_square_parameter(d);
    if c3.is_none() && !nf.torus_like.is_empty() {
        return Err(NotDecomposable {
            d: d.clone(),
            form: "C3 (d = (2*C3+1)^2)".to_string(),
        });
    }
    let c4 = mod12_fourth_parameter(d);
    if c4.is_none() && !nf.nil_other.is_empty() {
        return Err(NotDecomposable {
            d: d.clone(),
            form: "C4 (d = (12*C4+1)^4)".to_string(),
        });
    }
    Ok(FourForms {
        d: d.clone(),
        c1,
        c2,
        c3,
        c4,
    })
}

/// Certificate tree for the constructed map, with exact degree bookkeeping
/// at every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapRecipe {
    /// A self-map of one prime factor realizing `degree` at family parameter
    /// `parameter`; carries no pi1-surjectivity claim.
    SelfMap {
        factor: PrimeDescriptor,
        degree: BigInt,
        parameter: BigInt,
    },
    /// Doubles the domain piece and raises the degree by exactly one;
    /// pi1-surjective.
    Pinch {
        degree: BigInt,
        inner: Box<MapRecipe>,
    },
    /// Joins equal-degree pi1-surjective factor maps along the connect-sum
    /// spheres; pi1-surjective.
    ConnectedSum {
        degree: BigInt,
        children: Vec<MapRecipe>,
    },
}

impl MapRecipe {
    pub fn degree(&self) -> &BigInt {
        match self {
            MapRecipe::SelfMap { degree, .. }
            | MapRecipe::Pinch { degree, .. }
            | MapRecipe::ConnectedSum { degree, .. } => degree,
        }
    }

    /// Every node except a bare self-map is pi1-surjective.
    pub fn pi1_surjective(&self) -> bool {
        !matches!(self, MapRecipe::SelfMap { .. })
    }
}

/// Outcome of re-checking a recipe's bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecipeCheck {
    pub valid: bool,
    /// Overall degree when valid.
    pub degree: Option<BigInt>,
    /// First violation found, when invalid.
    pub violation: Option<String>,
}

fn check_node(recipe: &MapRecipe) -> Result<BigInt, String> {
    match recipe {
        MapRecipe::SelfMap {
            factor,
            degree,
            parameter,
        } => {
            let class = degree_class(factor);
            let family = family_for_class(&class)
                .map_err(|_| format!("self-map factor '{factor}' has a finite degree class"))?;
            let membership = family.member(degree);
            if !membership.is_member {
                return Err(format!(
                    "self-map degree {degree} is not in the class family of '{factor}'"
                ));
            }
            match family.value_at(parameter) {
                Some(value) if value == *degree => Ok(degree.clone()),
                _ => Err(format!(
                    "recorded parameter {parameter} does not produce degree {degree}"
                )),
            }
        }
        MapRecipe::Pinch { degree, inner } => {
            let inner_degree = check_node(inner)?;
            if *degree != &inner_degree + 1 {
                return Err(format!(
                    "pinch degree {degree} != inner degree {inner_degree} + 1"
                ));
            }
            Ok(degree.clone())
        }
        MapRecipe::ConnectedSum { degree, children } => {
            if children.is_empty() {
                return Err("connected-sum node has no children".to_string());
            }
            let mut common: Option<BigInt> = None;
            for child in children {
                if !child.pi1_surjective() {
                    return Err("connected-sum children must be pi1-surjective maps".to_string());
                }
                let child_degree = check_node(child)?;
                match &common {
                    None => common = Some(child_degree),
                    Some(expected) if *expected != child_degree => {
                        return Err(format!(
                            "unequal child degrees {expected} != {child_degree}"
                        ));
                    }
                    Some(_) => {}
                }
            }
            let common = common.expect("children is nonempty");
            if *degree != common {
                return Err(format!(
                    "connected-sum degree {degree} != common child degree {common}"
                ));
            }
            Ok(common)
        }
    }
}

/// Re-check every invariant of a recipe: pinches gain exactly one degree,
/// connected sums share one common child degree, and self-map degrees are
/// members of their factor's class family.
pub fn validate_recipe(recipe: &MapRecipe) -> RecipeCheck {
    match check_node(recipe) {
        Ok(degree) => RecipeCheck {
            valid: true,
            degree: Some(degree),
            violation: None,
        },
        Err(violation) => RecipeCheck {
            valid: false,
            degree: None,
            violation: Some(violation),
        },
    }
}

/// One sampled witness degree `(B*l + 1)^4 + 1`, with the four-form
/// certificate of the pre-shift value `(B*l + 1)^4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSample {
    pub l: BigInt,
    pub degree: BigInt,
    pub four_forms: FourForms,
}

/// The full witness package for one target: base, sampled degrees with
/// certificates, and the construction recipe for the first sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPackage {
    pub target: ManifoldExpression,
    /// N # N with each factor doubled in place.
    pub domain: ManifoldExpression,
    pub base: BigUint,
    pub samples: Vec<WitnessSample>,
    pub recipe: MapRecipe,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no witness family: {} factor(s) have finite degree sets", blockers.len())]
    Blocked {
        blockers: Vec<(PrimeDescriptor, FiniteReason)>,
    },
}

/// Sample parameters used when the caller does not pick any: l = 0..=4.
pub fn default_l_values() -> Vec<BigInt> {
    (0..=4).map(BigInt::from).collect()
}

fn pow4(x: &BigInt) -> BigInt {
    let sq = x * x;
    &sq * &sq
}

fn build_recipe(expr: &ManifoldExpression, pre_shift: &BigInt) -> MapRecipe {
    let children = expr
        .factors()
        .iter()
        .map(|factor| {
            let family = family_for_class(&degree_class(factor))
                .expect("witness targets have no finite factors");
            let membership = family.member(pre_shift);
            debug_assert!(membership.is_member);
            MapRecipe::Pinch {
                degree: pre_shift + 1,
                inner: Box::new(MapRecipe::SelfMap {
                    factor: factor.clone(),
                    degree: pre_shift.clone(),
                    parameter: membership.parameter.expect("members carry their parameter"),
                }),
            }
        })
        .collect();
    MapRecipe::ConnectedSum {
        degree: pre_shift + 1,
        children,
    }
}

/// Build the witness package for `expr` at the given sample parameters
/// (default 0..=4 when empty). Fails only when a factor has a finite degree
/// set, reporting every blocker with its verdict.
pub fn build_witness(
    expr: &ManifoldExpression,
    l_values: &[BigInt],
) -> Result<WitnessPackage, WitnessError> {
    let nf = normal_form(expr);
    if nf.has_finite_factor() {
        return Err(WitnessError::Blocked {
            blockers: nf.finite.clone(),
        });
    }
    let base = combined_base(&nf).expect("finite factors were just ruled out");
    let base_int = BigInt::from(base.clone());
    let ls: Vec<BigInt> = if l_values.is_empty() {
        default_l_values()
    } else {
        l_values.to_vec()
    };
    let samples = ls
        .iter()
        .map(|l| {
            let pre_shift = pow4(&(&base_int * l + 1));
            let forms = four_forms(&pre_shift, &nf)
                .expect("witness degrees satisfy all four forms by construction");
            WitnessSample {
                l: l.clone(),
                degree: &pre_shift + 1,
                four_forms: forms,
            }
        })
        .collect();
    let first_pre_shift = pow4(&(&base_int * &ls[0] + 1));
    Ok(WitnessPackage {
        target: expr.clone(),
        domain: expr.doubled(),
        base,
        samples,
        recipe: build_recipe(expr, &first_pre_shift),
    })
}

// --- JSON serialization -----------------------------------------------------
//
// Stable schema, documented in the repository: every integer is a decimal
// string, pieces appear as their DSL text, recipe trees are nested objects
// with "kind", "degree", "children".

impl Serialize for FactorVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FactorVerdict", 5)?;
        s.serialize_field("piece", &self.piece.to_string())?;
        s.serialize_field("geometry", &self.geometry)?;
        s.serialize_field("geometry_note", &self.geometry_note)?;
        s.serialize_field("degree_class", &self.class)?;
        s.serialize_field("class_heuristic", &self.class_heuristic)?;
        s.end()
    }
}

#[derive(Serialize)]
struct BlockerJson<'a> {
    piece: String,
    reason: &'a FiniteReason,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let blocking: Vec<BlockerJson> = self
            .blocking_factors()
            .map(|f| BlockerJson {
                piece: f.piece.to_string(),
                reason: match &f.class {
                    DegreeClass::Finite { reason } => reason,
                    _ => unreachable!("blocking factors are finite"),
                },
            })
            .collect();
        let mut s = serializer.serialize_struct("Verdict", 4)?;
        s.serialize_field("exists_infinite", &self.exists_infinite)?;
        s.serialize_field("self_infinite", &self.self_infinite)?;
        s.serialize_field("factors", &self.per_factor)?;
        s.serialize_field("blocking", &blocking)?;
        s.end()
    }
}

#[derive(Serialize)]
struct C1EntryJson<'a> {
    order: DecUint<'a>,
    quotient: DecInt<'a>,
}

#[derive(Serialize)]
struct C2EntryJson<'a> {
    alpha: DecUint<'a>,
    quotient: DecInt<'a>,
}

impl Serialize for FourForms {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let c1: Vec<C1EntryJson> = self
            .c1
            .iter()
            .map(|(order, quotient)| C1EntryJson {
                order: DecUint(order),
                quotient: DecInt(quotient),
            })
            .collect();
        let c2: Vec<C2EntryJson> = self
            .c2
            .iter()
            .map(|(alpha, quotient)| C2EntryJson {
                alpha: DecUint(alpha),
                quotient: DecInt(quotient),
            })
            .collect();
        let mut s = serializer.serialize_struct("FourForms", 5)?;
        s.serialize_field("d", &DecInt(&self.d))?;
        s.serialize_field("c1", &c1)?;
        s.serialize_field("c2", &c2)?;
        s.serialize_field("c3", &self.c3.as_ref().map(DecInt))?;
        s.serialize_field("c4", &self.c4.as_ref().map(DecInt))?;
        s.end()
    }
}

impl Serialize for MapRecipe {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            MapRecipe::SelfMap {
                factor,
                degree,
                parameter,
            } => {
                let mut s = serializer.serialize_struct("MapRecipe", 5)?;
                s.serialize_field("kind", "self_map")?;
                s.serialize_field("degree", &DecInt(degree))?;
                s.serialize_field("pi1_surjective", &false)?;
                s.serialize_field("factor", &factor.to_string())?;
                s.serialize_field("parameter", &DecInt(parameter))?;
                s.end()
            }
            MapRecipe::Pinch { degree, inner } => {
                let mut s = serializer.serialize_struct("MapRecipe", 4)?;
                s.serialize_field("kind", "pinch")?;
                s.serialize_field("degree", &DecInt(degree))?;
                s.serialize_field("pi1_surjective", &true)?;
                s.serialize_field("children", &[inner.as_ref()])?;
                s.end()
            }
            MapRecipe::ConnectedSum { degree, children } => {
                let mut s = serializer.serialize_struct("MapRecipe", 4)?;
                s.serialize_field("kind", "connected_sum")?;
                s.serialize_field("degree", &DecInt(degree))?;
                s.serialize_field("pi1_surjective", &true)?;
                s.serialize_field("children", children)?;
                s.end()
            }
        }
    }
}

impl Serialize for WitnessSample {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("WitnessSample", 3)?;
        s.serialize_field("l", &DecInt(&self.l))?;
        s.serialize_field("degree", &DecInt(&self.degree))?;
        s.serialize_field("four_forms", &self.four_forms)?;
        s.end()
    }
}

impl Serialize for WitnessPackage {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("WitnessPackage", 5)?;
        s.serialize_field("target", &self.target.to_string())?;
        s.serialize_field("domain", &self.domain.to_string())?;
        s.serialize_field("base", &DecUint(&self.base))?;
        s.serialize_field("samples", &self.samples)?;
        s.serialize_field("recipe", &self.recipe)?;
        s.end()
    }
}
