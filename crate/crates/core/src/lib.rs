//! Decision engine and certificate generator for mapping-degree finiteness
//! of closed oriented 3-manifolds.
//!
//! A target N enters as a connected sum of prime pieces described in a small
//! DSL: named spherical families, Seifert invariants, torus-bundle
//! monodromies, or geometry tags. The crate classifies each piece into a
//! Thurston geometry and one of five infinite degree classes (or a
//! finiteness verdict), decides whether some domain M admits infinitely many
//! mapping degrees onto N and whether N itself does, and when the first
//! answer is yes emits the explicit witness family
//! `{(B*l + 1)^4 + 1 : l in Z}` with
//! `B = 12 * prod |pi1(P_i)| * prod alpha(Q_j)`, packaged with a checkable
//! construction certificate for pi1-surjective maps N # N -> N.
//!
//! All arithmetic is exact: big integers, big rationals, modular arithmetic
//! and integer root extraction. No floating point anywhere.
//!
//! ```
//! use mapdeg::{build_witness, decide_exists_infinite, parse, validate_recipe};
//!
//! let target = parse("lens(5,1) # S2xS1").unwrap();
//! assert!(decide_exists_infinite(&target).exists_infinite);
//!
//! let package = build_witness(&target, &[]).unwrap(); // samples l = 0..=4
//! assert_eq!(package.base.to_string(), "60");         // 12 * 5
//! assert_eq!(package.samples[0].degree.to_string(), "2");
//! assert!(validate_recipe(&package.recipe).valid);
//! ```

pub mod classify;
pub mod decide;
mod decimal;
pub mod families;
pub mod manifold;
pub mod parser;
pub mod roots;

pub use classify::{
    class_is_heuristic, classify_geometry, degree_class, geometry_note, normal_form, DegreeClass,
    FiniteReason, GeometryClass, NormalForm,
};
pub use decide::{
    build_witness, decide_exists_infinite, decide_self_infinite, default_l_values, four_forms,
    validate_recipe, FactorVerdict, FourForms, MapRecipe, NotDecomposable, RecipeCheck, Verdict,
    WitnessError, WitnessPackage, WitnessSample,
};
pub use families::{
    combined_base, family_for_class, witness_family, DegreeFamily, FamilyError, Membership,
};
pub use manifold::{
    ExceptionalFiber, ManifoldExpression, ModelError, MonodromyMatrix, PrimeDescriptor,
    SeifertInvariants, SphericalBase, SphericalFamily,
};
pub use parser::{parse, render, ParseError, ParseErrorKind, SourceSpan};
