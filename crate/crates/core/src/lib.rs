//! Combinatorics of extended affine Weyl groups with a Frobenius twist.
//!
//! The crate works over a based root datum with a diagram automorphism
//! `sigma` and provides lengths relative to the anti-dominant base alcove,
//! Newton and Kottwitz invariants, P-alcove tests, Deligne-Lusztig reduction
//! and decision procedures for fundamental, K-fundamental and
//! G(L)-fundamental elements. All arithmetic is exact.
//!
//! The linear algebra in [`linalg`] is generic over the scalar; the group code
//! is instantiated with the aliases below.

pub mod affine;
pub mod alcove;
pub mod classifier;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod newton;
pub mod oracle;
pub mod plot;
pub mod reduction;
pub mod root_datum;
pub mod smith;
pub mod verify;

use num_rational::Ratio;

pub type Rational = Ratio<i64>;
pub type IntVector = Vec<i64>;
pub type RatVector = Vec<Rational>;
pub type IntMatrix = linalg::Matrix<i64>;
pub type RatMatrix = linalg::Matrix<Rational>;

pub use affine::{AffineRoot, AffineWeylGroup, Element, ReducedWord};
pub use alcove::VDatum;
pub use error::{Error, Result};
pub use newton::NewtonDatum;
pub use reduction::{ReductionCertificate, ReductionStep};
pub use root_datum::{build_root_datum, BasedRootDatum, DiagramAutomorphism, WeylElement};

/// `"p/q"` (or `"p"` for integers).
pub fn fraction_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn vector_string(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fraction_string).collect();
    format!("({})", parts.join(","))
}

pub fn parse_fraction(s: &str) -> Result<Rational> {
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("bad fraction `{s}`"),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Comma separated rational vector, e.g. `1/2,1/2`.
pub fn parse_vector(s: &str) -> Result<RatVector> {
    s.split(',').map(parse_fraction).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_roundtrip() {
        let x = Rational::new(-3, 6);
        assert_eq!(fraction_string(&x), "-1/2");
        assert_eq!(parse_fraction("-1/2").unwrap(), x);
        assert_eq!(parse_fraction("4").unwrap(), Rational::from_integer(4));
        assert!(parse_fraction("1/0").is_err());
        assert_eq!(parse_vector("1/2, 1/2").unwrap().len(), 2);
    }
}
