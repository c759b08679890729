//! Exact computation of the Hochschild cohomology ring `HH*(k[s^a, s^b])`
//! for coprime `a, b >= 2` over `Q` or a prime field.
//!
//! Everything is generic over the coefficient [`Field`]; the aliases below
//! name the concrete fields used in practice.

pub mod algebra;
pub mod classify;
pub mod cochain;
pub mod coefficients;
pub mod cup;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod oracle;
pub mod presentation;
pub mod report;
pub mod resolution;
pub mod semigroup;
pub mod verify;

pub use algebra::AlgebraElement;
pub use coefficients::{classify_case, CaseTag, Field, FieldSpec, Fp, Setting};
pub use error::{Error, Result};
pub use report::CheckReport;
pub use semigroup::{SemigroupPair, Shift};

/// Characteristic zero.
pub type Rational = num_rational::BigRational;
pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
pub type Gf5 = Fp<5>;
pub type Gf7 = Fp<7>;

/// Runs `$body` with `$F` bound to the field type of characteristic `$char`.
///
/// `$body` must evaluate to a [`Result`]; unsupported characteristics yield
/// [`Error::InvalidCharacteristic`].
#[macro_export]
macro_rules! with_field {
    ($char:expr, $F:ident => $body:expr) => {{
        let characteristic: u64 = $char;
        $crate::with_field!(@arms characteristic, $F, $body;
            2 3 5 7 11 13 17 19 23 29 31 37 41 43 47 53 59 61)
    }};
    (@arms $c:ident, $F:ident, $body:expr; $($p:literal)*) => {
        match $c {
            0 => {
                #[allow(dead_code)]
                type $F = $crate::Rational;
                $body
            }
            $(
                $p => {
                    #[allow(dead_code)]
                    type $F = $crate::Fp<$p>;
                    $body
                }
            )*
            other => Err($crate::Error::InvalidCharacteristic(other)),
        }
    };
}
