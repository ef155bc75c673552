//! Geometry and degree-class assignment for prime pieces.
//!
//! Tagged pieces classify by their tags. Seifert pieces branch on the exact
//! sign of the orbifold Euler characteristic and the exact vanishing of the
//! Euler number:
//!
//! | chi_orb | e = 0      | e != 0              |
//! |---------|------------|---------------------|
//! | > 0     | S^2 x E^1  | S^3 (never built)   |
//! | = 0     | E^3        | Nil                 |
//! | < 0     | H^2 x E^1  | PSL~(2,R)           |
//!
//! Torus bundles branch on the monodromy trace: finite order gives E^3,
//! parabolic gives Nil, Anosov gives Sol. Spherical Seifert data is already
//! rejected at construction, so classification is total here.

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::manifold::{ManifoldExpression, PrimeDescriptor, SeifertInvariants};

/// The eight Thurston geometries plus the two composite verdicts carried by
/// tagged pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeometryClass {
    #[serde(rename = "h3")]
    H3,
    #[serde(rename = "psl_tilde")]
    PslTilde,
    #[serde(rename = "h2xe1")]
    H2xE1,
    #[serde(rename = "sol")]
    Sol,
    #[serde(rename = "nil")]
    Nil,
    #[serde(rename = "e3")]
    E3,
    #[serde(rename = "s3")]
    S3,
    #[serde(rename = "s2xe1")]
    S2xE1,
    #[serde(rename = "nontrivial_graph")]
    NontrivialGraph,
    #[serde(rename = "mixed_with_hyperbolic")]
    MixedWithHyperbolic,
}

impl GeometryClass {
    pub fn human(&self) -> &'static str {
        match self {
            GeometryClass::H3 => "H^3",
            GeometryClass::PslTilde => "PSL~(2,R)",
            GeometryClass::H2xE1 => "H^2 x E^1",
            GeometryClass::Sol => "Sol",
            GeometryClass::Nil => "Nil",
            GeometryClass::E3 => "E^3",
            GeometryClass::S3 => "S^3",
            GeometryClass::S2xE1 => "S^2 x E^1",
            GeometryClass::NontrivialGraph => "non-trivial graph",
            GeometryClass::MixedWithHyperbolic => "mixed (hyperbolic piece)",
        }
    }
}

/// The volume obstruction that makes a target's degree sets finite for every
/// domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteReason {
    /// Hyperbolic targets: degrees are bounded through hyperbolic volume.
    HyperbolicVolume,
    /// A hyperbolic piece in the decomposition gives positive simplicial
    /// volume.
    SimplicialVolume,
    /// PSL~(2,R) targets carry nonzero Seifert volume.
    SeifertVolume,
    /// Non-trivial graph targets have a finite cover with positive Seifert
    /// volume.
    VirtualSeifertVolume,
}

impl FiniteReason {
    pub fn human(&self) -> &'static str {
        match self {
            FiniteReason::HyperbolicVolume => "hyperbolic target (hyperbolic volume bound)",
            FiniteReason::SimplicialVolume => {
                "hyperbolic piece in the decomposition (simplicial volume bound)"
            }
            FiniteReason::SeifertVolume => "PSL~(2,R) target (Seifert volume bound)",
            FiniteReason::VirtualSeifertVolume => {
                "non-trivial graph target (virtual Seifert volume bound)"
            }
        }
    }
}

/// The five classes of prime pieces with infinite self-degree sets, or a
/// finiteness verdict. C1 carries |pi1|, C2 carries alpha.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum DegreeClass {
    #[serde(rename = "c1_spherical")]
    C1Spherical {
        #[serde(with = "crate::decimal::biguint")]
        order: BigUint,
    },
    #[serde(rename = "c2_h2xe1")]
    C2H2xE1 {
        #[serde(with = "crate::decimal::biguint")]
        alpha: BigUint,
    },
    #[serde(rename = "c3_torus_bundle_or_semi")]
    C3TorusBundleOrSemi,
    #[serde(rename = "c4_nil_other")]
    C4NilOther,
    #[serde(rename = "c5_s2xs1")]
    C5S2xS1,
    #[serde(rename = "finite")]
    Finite { reason: FiniteReason },
}

impl DegreeClass {
    pub fn is_finite(&self) -> bool {
        matches!(self, DegreeClass::Finite { .. })
    }

    pub fn human(&self) -> String {
        match self {
            DegreeClass::C1Spherical { order } => format!("C1 spherical, |pi1| = {order}"),
            DegreeClass::C2H2xE1 { alpha } => format!("C2 H^2 x E^1, alpha = {alpha}"),
            DegreeClass::C3TorusBundleOrSemi => "C3 torus bundle or semi-bundle".to_string(),
            DegreeClass::C4NilOther => "C4 Nil, not a torus (semi-)bundle".to_string(),
            DegreeClass::C5S2xS1 => "C5 S2xS1".to_string(),
            DegreeClass::Finite { reason } => format!("finite: {}", reason.human()),
        }
    }
}

fn seifert_geometry(s: &SeifertInvariants) -> GeometryClass {
    let chi = s.chi_orb();
    let e_zero = s.euler_number().is_zero();
    if chi.is_positive() {
        if e_zero {
            GeometryClass::S2xE1
        } else {
            GeometryClass::S3
        }
    } else if chi.is_zero() {
        if e_zero {
            GeometryClass::E3
        } else {
            GeometryClass::Nil
        }
    } else if e_zero {
        GeometryClass::H2xE1
    } else {
        GeometryClass::PslTilde
    }
}

/// Supporting geometry of one prime piece.
pub fn classify_geometry(piece: &PrimeDescriptor) -> GeometryClass {
    match piece {
        PrimeDescriptor::Spherical(_) => GeometryClass::S3,
        PrimeDescriptor::S2xS1 => GeometryClass::S2xE1,
        PrimeDescriptor::Hyperbolic(_) => GeometryClass::H3,
        PrimeDescriptor::PslTilde(_) => GeometryClass::PslTilde,
        PrimeDescriptor::NontrivialGraph(_) => GeometryClass::NontrivialGraph,
        PrimeDescriptor::MixedHyperbolicPieces(_) => GeometryClass::MixedWithHyperbolic,
        PrimeDescriptor::NilOther(_) => GeometryClass::Nil,
        // A torus semi-bundle can support E^3, Nil or Sol and the tag does
        // not say which; Sol is the reported default and the report labels
        // the field unresolved. The degree class is C3 regardless.
        PrimeDescriptor::TorusSemiBundle(_) => GeometryClass::Sol,
        PrimeDescriptor::Seifert(s) => seifert_geometry(s),
        PrimeDescriptor::TorusBundle(m) => {
            let trace = m.trace();
            if m.is_plus_or_minus_identity() || trace.magnitude() <= &BigUint::from(1u32) {
                GeometryClass::E3
            } else if trace.magnitude() == &BigUint::from(2u32) {
                GeometryClass::Nil
            } else {
                GeometryClass::Sol
            }
        }
    }
}

/// Flat triangle bases S^2(2,3,6), S^2(2,4,4), S^2(3,3,3) carry the Nil
/// pieces that are not torus (semi-)bundles; the other flat bases (T^2,
/// Klein bottle, S^2(2,2,2,2), RP^2(2,2)) give bundles or semi-bundles.
/// With chi_orb = 0 the base is one of those seven orbifolds, and the
/// triangle bases are exactly the ones with three exceptional fibers.
fn nil_base_is_triangle(s: &SeifertInvariants) -> bool {
    s.fibers().len() == 3
}

/// Degree class of one prime piece.
pub fn degree_class(piece: &PrimeDescriptor) -> DegreeClass {
    match piece {
        PrimeDescriptor::Spherical(s) => DegreeClass::C1Spherical {
            order: s.pi1_order(),
        },
        PrimeDescriptor::S2xS1 => DegreeClass::C5S2xS1,
        PrimeDescriptor::TorusBundle(_) | PrimeDescriptor::TorusSemiBundle(_) => {
            DegreeClass::C3TorusBundleOrSemi
        }
        PrimeDescriptor::NilOther(_) => DegreeClass::C4NilOther,
        PrimeDescriptor::Hyperbolic(_) => DegreeClass::Finite {
            reason: FiniteReason::HyperbolicVolume,
        },
        PrimeDescriptor::PslTilde(_) => DegreeClass::Finite {
            reason: FiniteReason::SeifertVolume,
        },
        PrimeDescriptor::NontrivialGraph(_) => DegreeClass::Finite {
            reason: FiniteReason::VirtualSeifertVolume,
        },
        PrimeDescriptor::MixedHyperbolicPieces(_) => DegreeClass::Finite {
            reason: FiniteReason::SimplicialVolume,
        },
        PrimeDescriptor::Seifert(s) => match seifert_geometry(s) {
            GeometryClass::H2xE1 => DegreeClass::C2H2xE1 { alpha: s.alpha() },
            GeometryClass::E3 => DegreeClass::C3TorusBundleOrSemi,
            GeometryClass::Nil => {
                if nil_base_is_triangle(s) {
                    DegreeClass::C4NilOther
                } else {
                    DegreeClass::C3TorusBundleOrSemi
                }
            }
            // Among closed orientable prime pieces, S^2 x E^1 geometry means
            // S^2 x S^1.
            GeometryClass::S2xE1 => DegreeClass::C5S2xS1,
            GeometryClass::PslTilde => DegreeClass::Finite {
                reason: FiniteReason::SeifertVolume,
            },
            other => unreachable!("Seifert pieces never classify as {other:?}"),
        },
    }
}

/// True when the assigned class rests on the heuristic Nil base-orbifold
/// split (bundle-like flat bases versus triangle bases). The split only
/// labels reports; witness arithmetic is valid on either side.
pub fn class_is_heuristic(piece: &PrimeDescriptor) -> bool {
    matches!(piece, PrimeDescriptor::Seifert(s) if seifert_geometry(s) == GeometryClass::Nil)
}

/// Report-level caveat for geometry labels the input cannot determine.
pub fn geometry_note(piece: &PrimeDescriptor) -> Option<&'static str> {
    match piece {
        PrimeDescriptor::TorusSemiBundle(_) => Some("unresolved (tag-level input)"),
        PrimeDescriptor::Seifert(s) if seifert_geometry(s) == GeometryClass::Nil => {
            Some("bundle / non-bundle split from the base orbifold is heuristic")
        }
        _ => None,
    }
}

/// A connected sum regrouped by degree class: spherical factors with their
/// group orders, H^2 x E^1 factors with their alphas, the torus-bundle-like
/// and Nil-other buckets, the S2xS1 factors, and any finite-verdict blockers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalForm {
    pub spherical: Vec<(PrimeDescriptor, BigUint)>,
    pub h2xe1: Vec<(PrimeDescriptor, BigUint)>,
    pub torus_like: Vec<PrimeDescriptor>,
    pub nil_other: Vec<PrimeDescriptor>,
    pub s2xs1: Vec<PrimeDescriptor>,
    pub finite: Vec<(PrimeDescriptor, FiniteReason)>,
}

impl NormalForm {
    /// Number of S2xS1 factors.
    pub fn s_count(&self) -> usize {
        self.s2xs1.len()
    }

    pub fn has_finite_factor(&self) -> bool {
        !self.finite.is_empty()
    }

    pub fn factor_count(&self) -> usize {
        self.spherical.len()
            + self.h2xe1.len()
            + self.torus_like.len()
            + self.nil_other.len()
            + self.s2xs1.len()
            + self.finite.len()
    }
}

/// Bucket the factors of a connected sum by degree class, preserving input
/// order within each bucket.
pub fn normal_form(expr: &ManifoldExpression) -> NormalForm {
    let mut nf = NormalForm::default();
    for piece in expr.factors() {
        match degree_class(piece) {
            DegreeClass::C1Spherical { order } => nf.spherical.push((piece.clone(), order)),
            DegreeClass::C2H2xE1 { alpha } => nf.h2xe1.push((piece.clone(), alpha)),
            DegreeClass::C3TorusBundleOrSemi => nf.torus_like.push(piece.clone()),
            DegreeClass::C4NilOther => nf.nil_other.push(piece.clone()),
            DegreeClass::C5S2xS1 => nf.s2xs1.push(piece.clone()),
            DegreeClass::Finite { reason } => nf.finite.push((piece.clone(), reason)),
        }
    }
    nf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{MonodromyMatrix, SphericalBase, SphericalFamily};
    use num_bigint::BigInt;

    fn seifert(orientable: bool, genus: i64, b: i64, fibers: &[(i64, i64)]) -> PrimeDescriptor {
        PrimeDescriptor::Seifert(
            SeifertInvariants::new(
                orientable,
                genus,
                b,
                fibers
                    .iter()
                    .map(|&(a, t)| (BigInt::from(a), BigInt::from(t))),
            )
            .unwrap(),
        )
    }

    fn torus_bundle(m11: i64, m12: i64, m21: i64, m22: i64) -> PrimeDescriptor {
        PrimeDescriptor::TorusBundle(MonodromyMatrix::new(m11, m12, m21, m22).unwrap())
    }

    #[test]
    fn identity_monodromy_is_flat() {
        assert_eq!(
            classify_geometry(&torus_bundle(1, 0, 0, 1)),
            GeometryClass::E3
        );
    }

    #[test]
    fn anosov_monodromy_is_sol() {
        // trace 3 > 2
        assert_eq!(
            classify_geometry(&torus_bundle(2, 1, 1, 1)),
            GeometryClass::Sol
        );
    }

    #[test]
    fn parabolic_monodromy_is_nil_and_minus_identity_is_flat() {
        assert_eq!(
            classify_geometry(&torus_bundle(1, 1, 0, 1)),
            GeometryClass::Nil
        );
        assert_eq!(
            classify_geometry(&torus_bundle(-1, 0, 0, -1)),
            GeometryClass::E3
        );
        // trace 0: finite order
        assert_eq!(
            classify_geometry(&torus_bundle(0, -1, 1, 0)),
            GeometryClass::E3
        );
    }

    #[test]
    fn flat_torus_as_seifert_data_is_e3() {
        assert_eq!(
            classify_geometry(&seifert(true, 1, 0, &[])),
            GeometryClass::E3
        );
    }

    #[test]
    fn negative_chi_splits_on_euler_number() {
        // chi = -1/42 < 0, e = 1/42 != 0: PSL~(2,R).
        let psl = seifert(true, 0, -1, &[(2, 1), (3, 1), (7, 1)]);
        assert_eq!(classify_geometry(&psl), GeometryClass::PslTilde);
        assert_eq!(
            degree_class(&psl),
            DegreeClass::Finite {
                reason: FiniteReason::SeifertVolume
            }
        );

        // chi = -1/3 < 0, e = 0: H^2 x E^1 with alpha = 36.
        let h2 = seifert(true, 0, -2, &[(2, 1), (2, 1), (3, 1), (3, 2)]);
        assert_eq!(classify_geometry(&h2), GeometryClass::H2xE1);
        assert_eq!(
            degree_class(&h2),
            DegreeClass::C2H2xE1 {
                alpha: BigUint::from(36u32)
            }
        );
    }

    #[test]
    fn product_of_surface_and_circle_has_alpha_one() {
        let h2 = seifert(true, 2, 0, &[]);
        assert_eq!(classify_geometry(&h2), GeometryClass::H2xE1);
        assert_eq!(
            degree_class(&h2),
            DegreeClass::C2H2xE1 {
                alpha: BigUint::from(1u32)
            }
        );
    }

    #[test]
    fn spherical_piece_reports_its_order() {
        let lens =
            PrimeDescriptor::Spherical(SphericalFamily::plain(SphericalBase::lens(5, 1).unwrap()));
        assert_eq!(classify_geometry(&lens), GeometryClass::S3);
        assert_eq!(
            degree_class(&lens),
            DegreeClass::C1Spherical {
                order: BigUint::from(5u32)
            }
        );
    }

    #[test]
    fn hyperbolic_tag_is_finite() {
        let hyp = PrimeDescriptor::Hyperbolic("weeks".to_string());
        assert_eq!(classify_geometry(&hyp), GeometryClass::H3);
        assert_eq!(
            degree_class(&hyp),
            DegreeClass::Finite {
                reason: FiniteReason::HyperbolicVolume
            }
        );
    }

    #[test]
    fn nil_seifert_splits_on_triangle_bases() {
        // S^2(2,3,6) with e = -1: Nil over a triangle base, class C4.
        let triangle = seifert(true, 0, 0, &[(2, 1), (3, 1), (6, 1)]);
        assert_eq!(classify_geometry(&triangle), GeometryClass::Nil);
        assert_eq!(degree_class(&triangle), DegreeClass::C4NilOther);
        assert!(class_is_heuristic(&triangle));

        // S^2(2,2,2,2) with e != 0: Nil but bundle-like, class C3.
        let square = seifert(true, 0, 0, &[(2, 1), (2, 1), (2, 1), (2, 1)]);
        assert_eq!(classify_geometry(&square), GeometryClass::Nil);
        assert_eq!(degree_class(&square), DegreeClass::C3TorusBundleOrSemi);
        assert!(class_is_heuristic(&square));

        // T^2 base with e != 0: Nil torus bundle, class C3, still flagged.
        let torus = seifert(true, 1, 1, &[]);
        assert_eq!(classify_geometry(&torus), GeometryClass::Nil);
        assert_eq!(degree_class(&torus), DegreeClass::C3TorusBundleOrSemi);
    }

    #[test]
    fn seifert_s2xe1_piece_is_class_c5() {
        // Trivial fibration over S^2: S^2 x S^1 itself.
        let s = seifert(true, 0, 0, &[]);
        assert_eq!(classify_geometry(&s), GeometryClass::S2xE1);
        assert_eq!(degree_class(&s), DegreeClass::C5S2xS1);
    }

    #[test]
    fn torus_semi_bundle_reports_unresolved_geometry() {
        let tsb = PrimeDescriptor::TorusSemiBundle("x".to_string());
        assert_eq!(classify_geometry(&tsb), GeometryClass::Sol);
        assert_eq!(degree_class(&tsb), DegreeClass::C3TorusBundleOrSemi);
        assert_eq!(geometry_note(&tsb), Some("unresolved (tag-level input)"));
    }

    #[test]
    fn finite_class_exactly_for_volume_geometries() {
        let pieces = vec![
            PrimeDescriptor::Hyperbolic("a".into()),
            PrimeDescriptor::PslTilde("b".into()),
            PrimeDescriptor::NontrivialGraph("c".into()),
            PrimeDescriptor::MixedHyperbolicPieces("d".into()),
            PrimeDescriptor::S2xS1,
            torus_bundle(1, 0, 0, 1),
            PrimeDescriptor::NilOther("e".into()),
        ];
        for piece in &pieces {
            let finite_geometry = matches!(
                classify_geometry(piece),
                GeometryClass::H3
                    | GeometryClass::PslTilde
                    | GeometryClass::NontrivialGraph
                    | GeometryClass::MixedWithHyperbolic
            );
            assert_eq!(degree_class(piece).is_finite(), finite_geometry);
        }
    }

    #[test]
    fn normal_form_buckets_preserve_the_factor_multiset() {
        let lens =
            PrimeDescriptor::Spherical(SphericalFamily::plain(SphericalBase::lens(5, 1).unwrap()));
        let h2 = seifert(true, 2, 0, &[]);
        let hyp = PrimeDescriptor::Hyperbolic("w".to_string());
        let expr = ManifoldExpression::new(vec![
            lens.clone(),
            h2.clone(),
            PrimeDescriptor::S2xS1,
            torus_bundle(2, 1, 1, 1),
            hyp.clone(),
        ])
        .unwrap();
        let nf = normal_form(&expr);
        assert_eq!(nf.spherical.len(), 1);
        assert_eq!(nf.h2xe1.len(), 1);
        assert_eq!(nf.torus_like.len(), 1);
        assert_eq!(nf.s2xs1.len(), 1);
        assert_eq!(nf.finite.len(), 1);
        assert_eq!(nf.factor_count(), expr.factors().len());
        assert_eq!(nf.s_count(), 1);
        assert!(nf.has_finite_factor());

        let mut rebuilt: Vec<PrimeDescriptor> = Vec::new();
        rebuilt.extend(nf.spherical.iter().map(|(p, _)| p.clone()));
        rebuilt.extend(nf.h2xe1.iter().map(|(p, _)| p.clone()));
        rebuilt.extend(nf.torus_like.iter().cloned());
        rebuilt.extend(nf.nil_other.iter().cloned());
        rebuilt.extend(nf.s2xs1.iter().cloned());
        rebuilt.extend(nf.finite.iter().map(|(p, _)| p.clone()));
        let mut original = expr.factors().to_vec();
        rebuilt.sort();
        original.sort();
        assert_eq!(rebuilt, original);
    }
}
