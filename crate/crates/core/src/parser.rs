//! Line-oriented DSL for connected-sum expressions.
//!
//! Grammar (whitespace-insensitive between tokens):
//!
//! ```text
//! expr    := piece ("#" piece)*
//! piece   := "S2xS1" | spherical | sfs | tb | tagged
//! spherical := base ("*cyclic(" int ")")?
//! base    := "lens(" int "," int ")" | "prism(" int ")" | "tet" | "oct" | "ico"
//! sfs     := "sfs(" ("o" | "n") int ";" int (";" "(" int "," int ")")* ")"
//! tb      := "tb[[" int "," int "],[" int "," int "]]"
//! tagged  := ("tsb" | "hyp" | "psl" | "graph" | "mixed" | "nilother") "(" label ")"
//! int     := "-"? [0-9]+                 (arbitrary precision)
//! label   := [A-Za-z0-9_.-]+
//! ```
//!
//! Integers are arbitrary precision at the lexer level; all range and
//! coprimality checks live in the model constructors and surface here as
//! `ConstraintViolation` errors with a span over the offending piece. The
//! first error wins, and any malformed input yields a structured
//! [`ParseError`] -- parsing never panics.
//!
//! Batch files are one expression per line; lines prefixed with `--` are
//! comments.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::manifold::{
    ManifoldExpression, ModelError, MonodromyMatrix, PrimeDescriptor, SeifertInvariants,
    SphericalBase, SphericalFamily,
};

/// 1-based source position with a length in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    BadNumber,
    /// Carries the stable name of the violated invariant.
    ConstraintViolation {
        constraint: &'static str,
    },
    UnknownPiece,
}

impl ParseErrorKind {
    pub fn token(&self) -> &'static str {
        match self {
            ParseErrorKind::UnexpectedToken => "unexpected_token",
            ParseErrorKind::BadNumber => "bad_number",
            ParseErrorKind::ConstraintViolation { .. } => "constraint_violation",
            ParseErrorKind::UnknownPiece => "unknown_piece",
        }
    }

    pub fn constraint(&self) -> Option<&'static str> {
        match self {
            ParseErrorKind::ConstraintViolation { constraint } => Some(constraint),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at line {}, column {}",
            self.message, self.span.line, self.span.column
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy)]
struct Mark {
    pos: usize,
    line: usize,
    column: usize,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            line: self.line,
            column: self.column,
        }
    }

    fn span_from(&self, mark: Mark) -> SourceSpan {
        SourceSpan {
            line: mark.line,
            column: mark.column,
            length: self.pos - mark.pos,
        }
    }

    fn span_here(&self) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.column,
            length: usize::from(self.pos < self.chars.len()),
        }
    }

    fn error_here(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            span: self.span_here(),
            kind,
            message: message.into(),
        }
    }

    fn error_from(
        &self,
        mark: Mark,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> ParseError {
        ParseError {
            span: self.span_from(mark),
            kind,
            message: message.into(),
        }
    }

    fn constraint_error(&self, mark: Mark, err: ModelError) -> ParseError {
        ParseError {
            span: self.span_from(mark),
            kind: ParseErrorKind::ConstraintViolation {
                constraint: err.constraint_name(),
            },
            message: err.to_string(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while matches!(self.peek(), Some(c) if pred(c)) {
            out.push(self.bump().expect("peeked"));
        }
        out
    }

    fn expect(&mut self, wanted: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == wanted => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error_here(
                ParseErrorKind::UnexpectedToken,
                format!("expected '{wanted}', found '{c}'"),
            )),
            None => Err(self.error_here(
                ParseErrorKind::UnexpectedToken,
                format!("expected '{wanted}', found end of input"),
            )),
        }
    }

    fn parse_int(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let mark = self.mark();
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(self.error_from(
                mark,
                ParseErrorKind::BadNumber,
                "expected an integer".to_string(),
            ));
        }
        let magnitude =
            BigInt::parse_bytes(digits.as_bytes(), 10).expect("digits form a base-10 integer");
        Ok(if negative { -magnitude } else { magnitude })
    }

    fn parse_label(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let label = self.take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'));
        if label.is_empty() {
            return Err(self.error_here(
                ParseErrorKind::UnexpectedToken,
                "expected a label (letters, digits, '_', '.', '-')",
            ));
        }
        Ok(label)
    }

    fn parse_piece(&mut self) -> Result<PrimeDescriptor, ParseError> {
        self.skip_ws();
        let mark = self.mark();
        let word = self.take_while(|c| c.is_ascii_alphanumeric());
        if word.is_empty() {
            return match self.peek() {
                Some(c) => Err(self.error_here(
                    ParseErrorKind::UnexpectedToken,
                    format!("expected a manifold piece, found '{c}'"),
                )),
                None => Err(self.error_here(
                    ParseErrorKind::UnexpectedToken,
                    "expected a manifold piece, found end of input",
                )),
            };
        }
        match word.as_str() {
            "S2xS1" => Ok(PrimeDescriptor::S2xS1),
            "lens" | "prism" | "tet" | "oct" | "ico" => self.finish_spherical(mark, &word),
            "sfs" => self.finish_sfs(mark),
            "tb" => self.finish_torus_bundle(mark),
            "tsb" => Ok(PrimeDescriptor::TorusSemiBundle(self.tag_label()?)),
            "hyp" => Ok(PrimeDescriptor::Hyperbolic(self.tag_label()?)),
            "psl" => Ok(PrimeDescriptor::PslTilde(self.tag_label()?)),
            "graph" => Ok(PrimeDescriptor::NontrivialGraph(self.tag_label()?)),
            "mixed" => Ok(PrimeDescriptor::MixedHyperbolicPieces(self.tag_label()?)),
            "nilother" => Ok(PrimeDescriptor::NilOther(self.tag_label()?)),
            _ => Err(self.error_from(
                mark,
                ParseErrorKind::UnknownPiece,
                format!("unknown piece '{word}'"),
            )),
        }
    }

    fn tag_label(&mut self) -> Result<String, ParseError> {
        self.expect('(')?;
        let label = self.parse_label()?;
        self.expect(')')?;
        Ok(label)
    }

    fn finish_spherical(&mut self, mark: Mark, word: &str) -> Result<PrimeDescriptor, ParseError> {
        let base = match word {
            "lens" => {
                self.expect('(')?;
                let p = self.parse_int()?;
                self.expect(',')?;
                let q = self.parse_int()?;
                self.expect(')')?;
                SphericalBase::lens(p, q).map_err(|e| self.constraint_error(mark, e))?
            }
            "prism" => {
                self.expect('(')?;
                let n = self.parse_int()?;
                self.expect(')')?;
                SphericalBase::prism(n).map_err(|e| self.constraint_error(mark, e))?
            }
            "tet" => SphericalBase::BinaryTetrahedral,
            "oct" => SphericalBase::BinaryOctahedral,
            "ico" => SphericalBase::BinaryIcosahedral,
            _ => unreachable!("caller matched the base keyword"),
        };
        self.skip_ws();
        if self.peek() == Some('*') {
            self.bump();
            self.skip_ws();
            let kw_mark = self.mark();
            let kw = self.take_while(|c| c.is_ascii_alphanumeric());
            if kw != "cyclic" {
                return Err(self.error_from(
                    kw_mark,
                    ParseErrorKind::UnexpectedToken,
                    format!("expected 'cyclic' after '*', found '{kw}'"),
                ));
            }
            self.expect('(')?;
            let m = self.parse_int()?;
            self.expect(')')?;
            let family =
                SphericalFamily::new(base, m).map_err(|e| self.constraint_error(mark, e))?;
            Ok(PrimeDescriptor::Spherical(family))
        } else {
            Ok(PrimeDescriptor::Spherical(SphericalFamily::plain(base)))
        }
    }

    fn finish_sfs(&mut self, mark: Mark) -> Result<PrimeDescriptor, ParseError> {
        self.expect('(')?;
        self.skip_ws();
        let orientable = match self.peek() {
            Some('o') => {
                self.bump();
                true
            }
            Some('n') => {
                self.bump();
                false
            }
            _ => {
                return Err(self.error_here(
                    ParseErrorKind::UnexpectedToken,
                    "expected base orientability 'o' or 'n'",
                ))
            }
        };
        let genus = self.parse_int()?;
        self.expect(';')?;
        let euler_b = self.parse_int()?;
        let mut fibers = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(';') => {
                    self.bump();
                    self.expect('(')?;
                    let a = self.parse_int()?;
                    self.expect(',')?;
                    let b = self.parse_int()?;
                    self.expect(')')?;
                    fibers.push((a, b));
                }
                Some(')') => {
                    self.bump();
                    break;
                }
                Some(c) => {
                    return Err(self.error_here(
                        ParseErrorKind::UnexpectedToken,
                        format!("expected ';' or ')' in sfs, found '{c}'"),
                    ))
                }
                None => {
                    return Err(self.error_here(
                        ParseErrorKind::UnexpectedToken,
                        "expected ';' or ')' in sfs, found end of input",
                    ))
                }
            }
        }
        let invariants = SeifertInvariants::new(orientable, genus, euler_b, fibers)
            .map_err(|e| self.constraint_error(mark, e))?;
        Ok(PrimeDescriptor::Seifert(invariants))
    }

    fn finish_torus_bundle(&mut self, mark: Mark) -> Result<PrimeDescriptor, ParseError> {
        self.expect('[')?;
        self.expect('[')?;
        let m11 = self.parse_int()?;
        self.expect(',')?;
        let m12 = self.parse_int()?;
        self.expect(']')?;
        self.expect(',')?;
        self.expect('[')?;
        let m21 = self.parse_int()?;
        self.expect(',')?;
        let m22 = self.parse_int()?;
        self.expect(']')?;
        self.expect(']')?;
        let matrix =
            MonodromyMatrix::new(m11, m12, m21, m22).map_err(|e| self.constraint_error(mark, e))?;
        Ok(PrimeDescriptor::TorusBundle(matrix))
    }
}

/// Parse one connected-sum expression. The first error wins; every malformed
/// input yields a `ParseError` whose span stays inside the input.
pub fn parse(text: &str) -> Result<ManifoldExpression, ParseError> {
    let mut cursor = Cursor::new(text);
    let mut factors = vec![cursor.parse_piece()?];
    loop {
        cursor.skip_ws();
        match cursor.peek() {
            None => break,
            Some('#') => {
                cursor.bump();
                factors.push(cursor.parse_piece()?);
            }
            Some(c) => {
                return Err(cursor.error_here(
                    ParseErrorKind::UnexpectedToken,
                    format!("expected '#' or end of input, found '{c}'"),
                ))
            }
        }
    }
    Ok(ManifoldExpression::new(factors).expect("at least one piece was parsed"))
}

/// Canonical text of the normalized expression; `parse(render(m))` equals
/// `m.normalize()`.
pub fn render(expr: &ManifoldExpression) -> String {
    expr.normalize().to_string()
}

impl fmt::Display for PrimeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeDescriptor::Spherical(s) => {
                match s.base() {
                    SphericalBase::Lens { p, q } => write!(f, "lens({p},{q})")?,
                    SphericalBase::Prism { n } => write!(f, "prism({n})")?,
                    SphericalBase::BinaryTetrahedral => write!(f, "tet")?,
                    SphericalBase::BinaryOctahedral => write!(f, "oct")?,
                    SphericalBase::BinaryIcosahedral => write!(f, "ico")?,
                }
                if !s.cyclic_factor().is_one() {
                    write!(f, "*cyclic({})", s.cyclic_factor())?;
                }
                Ok(())
            }
            PrimeDescriptor::Seifert(s) => {
                write!(
                    f,
                    "sfs({} {}; {}",
                    if s.base_orientable() { "o" } else { "n" },
                    s.base_genus(),
                    s.euler_b()
                )?;
                for fiber in s.fibers() {
                    write!(f, "; ({},{})", fiber.index(), fiber.twist())?;
                }
                write!(f, ")")
            }
            PrimeDescriptor::TorusBundle(m) => {
                let e = m.entries();
                write!(f, "tb[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
            }
            PrimeDescriptor::TorusSemiBundle(label) => write!(f, "tsb({label})"),
            PrimeDescriptor::NilOther(label) => write!(f, "nilother({label})"),
            PrimeDescriptor::S2xS1 => write!(f, "S2xS1"),
            PrimeDescriptor::Hyperbolic(label) => write!(f, "hyp({label})"),
            PrimeDescriptor::PslTilde(label) => write!(f, "psl({label})"),
            PrimeDescriptor::NontrivialGraph(label) => write!(f, "graph({label})"),
            PrimeDescriptor::MixedHyperbolicPieces(label) => write!(f, "mixed({label})"),
        }
    }
}

impl fmt::Display for ManifoldExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, piece) in self.factors().iter().enumerate() {
            if i > 0 {
                write!(f, " # ")?;
            }
            write!(f, "{piece}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_connected_sum() {
        let expr = parse("lens(5,1) # S2xS1").unwrap();
        assert_eq!(expr.factors().len(), 2);
        assert_eq!(
            expr.factors()[0],
            PrimeDescriptor::Spherical(SphericalFamily::plain(SphericalBase::lens(5, 1).unwrap()))
        );
        assert_eq!(expr.factors()[1], PrimeDescriptor::S2xS1);
    }

    #[test]
    fn parses_identity_torus_bundle() {
        let expr = parse("tb[[1,0],[0,1]]").unwrap();
        assert_eq!(
            expr.factors(),
            &[PrimeDescriptor::TorusBundle(MonodromyMatrix::identity())]
        );
    }

    #[test]
    fn coprimality_violation_has_span_at_piece_start() {
        let err = parse("lens(4,2)").unwrap_err();
        assert_eq!(
            err.kind,
            ParseErrorKind::ConstraintViolation {
                constraint: "gcd(p,q)=1"
            }
        );
        assert_eq!(err.span.line, 1);
        assert_eq!(err.span.column, 1);
        assert_eq!(err.span.length, 9);
    }

    #[test]
    fn later_piece_errors_point_at_that_piece() {
        let err = parse("lens(5,1) # lens(4,2)").unwrap_err();
        assert_eq!(err.span.column, 13);
        assert_eq!(err.kind.constraint(), Some("gcd(p,q)=1"));
    }

    #[test]
    fn unknown_piece_is_reported() {
        let err = parse("weeks").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownPiece);
        assert_eq!(err.span.length, 5);
    }

    #[test]
    fn bad_number_is_reported() {
        let err = parse("lens(x,1)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadNumber);
        assert_eq!(err.span.column, 6);
    }

    #[test]
    fn empty_input_is_a_parse_error() {
        let err = parse("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(err.span.column, 1);
        assert_eq!(err.span.length, 0);
    }

    #[test]
    fn whitespace_is_insignificant_between_tokens() {
        let tight = parse("sfs(o0;-1;(2,1);(3,1);(7,1))").unwrap();
        let spaced = parse("  sfs( o 0 ; -1 ; ( 2 , 1 ) ; ( 3 , 1 ) ; ( 7 , 1 ) )  ").unwrap();
        assert_eq!(tight, spaced);
        let tb = parse("tb [ [ 2 , 1 ] , [ 1 , 1 ] ]").unwrap();
        assert_eq!(tb, parse("tb[[2,1],[1,1]]").unwrap());
    }

    #[test]
    fn cyclic_suffix_parses_and_validates() {
        let expr = parse("lens(7,2)*cyclic(3)").unwrap();
        match &expr.factors()[0] {
            PrimeDescriptor::Spherical(s) => {
                assert_eq!(s.pi1_order(), num_bigint::BigUint::from(21u32));
            }
            other => panic!("unexpected piece {other:?}"),
        }
        let err = parse("ico*cyclic(2)").unwrap_err();
        assert_eq!(err.kind.constraint(), Some("gcd(m,|pi1|)=1"));
    }

    #[test]
    fn spherical_seifert_data_is_rejected_at_parse_time() {
        let err = parse("sfs(o 0; -1; (2,1))").unwrap_err();
        assert_eq!(err.kind.constraint(), Some("use-named-spherical-family"));
    }

    #[test]
    fn arbitrary_precision_integers_survive_the_lexer() {
        let expr = parse("lens(340282366920938463463374607431768211507,11)").unwrap();
        match &expr.factors()[0] {
            PrimeDescriptor::Spherical(s) => {
                assert_eq!(
                    s.pi1_order().to_string(),
                    "340282366920938463463374607431768211507"
                );
            }
            other => panic!("unexpected piece {other:?}"),
        }
    }

    #[test]
    fn render_examples() {
        let expr = parse("S2xS1").unwrap();
        assert_eq!(render(&expr), "S2xS1");
        let expr = parse("lens(5,1) # S2xS1").unwrap();
        assert_eq!(render(&expr), "lens(5,1) # S2xS1");
        let expr = parse("sfs(o 0; 1; (2,1); (3,1); (6,1))").unwrap();
        assert_eq!(render(&expr), "sfs(o 0; 1; (2,1); (3,1); (6,1))");
    }

    #[test]
    fn render_sorts_factors_canonically() {
        let expr = parse("S2xS1 # lens(5,1)").unwrap();
        assert_eq!(render(&expr), "lens(5,1) # S2xS1");
        // Display preserves input order; render normalizes.
        assert_eq!(expr.to_string(), "S2xS1 # lens(5,1)");
    }

    #[test]
    fn roundtrip_on_normalized_fiber_data() {
        // Raw twists outside (0, a) normalize at construction and render in
        // normalized form.
        let expr = parse("sfs(o 1; 0; (3,7); (3,-1))").unwrap();
        let rendered = render(&expr);
        assert_eq!(rendered, "sfs(o 1; 1; (3,1); (3,2))");
        assert_eq!(parse(&rendered).unwrap(), expr.normalize());
    }

    #[test]
    fn trailing_garbage_is_an_error() {
        let err = parse("S2xS1 + S2xS1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedToken);
        assert_eq!(err.span.column, 7);
    }

    #[test]
    fn fuzzish_smoke_inputs_never_panic() {
        for text in [
            "#",
            "lens",
            "lens(",
            "lens(5",
            "lens(5,",
            "lens(5,1",
            "lens(5,1)*",
            "lens(5,1)*cy",
            "sfs",
            "sfs(",
            "sfs(o",
            "sfs(x 0; 0)",
            "tb",
            "tb[",
            "tb[[1,0],[0,1]",
            "tsb()",
            "hyp(",
            "-",
            "--",
            "\u{0}\u{1}\u{2}",
            "lens(999999999999999999999999999,0)",
            "S2xS1#S2xS1#",
        ] {
            let result = parse(text);
            assert!(result.is_err(), "expected error for {text:?}");
        }
    }
}
