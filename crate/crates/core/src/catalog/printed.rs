//! Hand transcriptions of the explicit forms, maps and inverses, kept apart
//! from the matrix constructions so the two can be checked against each
//! other. `L1..L5` abbreviate `lambda1..lambda5`.

use std::sync::Arc;

use crate::compose::{ComposeError, MultilinearMap};
use crate::polyring::{PolyError, Polynomial, VarTable};

pub const QUAD_MAP: [&str; 2] = ["x1*y1 - q*x2*y2", "x1*y2 + x2*y1 + p*x2*y2"];

pub const CUBIC_FORM: &str = "x1^3 + (L1 + L3)*x1^2*x2 + (L2 + L5)*x1^2*x3 \
    + L3*(2*L1 - 2*L2 - L3 + L5)*x1*x2^2 + (L1*L5 + 2*L2*L3 - 3*L3*L4)*x1*x2*x3 \
    + (L1*L4 - L2^2 + 2*L2*L5 - 2*L3*L4)*x1*x3^2 + L3^2*(L1 - 2*L2 - L3 + L4 + L5)*x2^3 \
    - L3*(2*L1*L4 - L1*L5 - 2*L2^2 - L2*L3 + 3*L2*L5 - L3*L4 + L3*L5 - L5^2)*x2^2*x3 \
    + (L1^2*L4 - L1*L2^2 + L1*L2*L5 - 3*L1*L3*L4 + L2^2*L3 + L2*L3*L4 + 2*L3^2*L4 - 2*L3*L4*L5)*x2*x3^2 \
    + (L1*L2*L4 - L2^3 + L2^2*L5 - 2*L2*L3*L4 + L3*L4^2)*x3^3";

pub const CUBIC_MAP: [&str; 3] = [
    "x1*y1 - L3*(L1 - L2 - L3 + L5)*x2*y2 - L3*(L2 - L4)*x2*y3 - L3*(L2 - L4)*x3*y2 \
     + (-L1*L4 + L2^2 - L2*L5 + L3*L4)*x3*y3",
    "x1*y2 + x2*y1 + L1*x2*y2 + L2*x2*y3 + L2*x3*y2 + L4*x3*y3",
    "x1*y3 + L3*x2*y2 + L3*x2*y3 + x3*y1 + L3*x3*y2 + L5*x3*y3",
];

pub const QUARTIC_FORM: &str = "x1^4 + 2*m*x1^3*x2 + 2*p*x1^3*x3 + m*p*x1^3*x4 \
    + (m^2 + 2*n)*x1^2*x2^2 + 3*m*p*x1^2*x2*x3 + (m^2 + 2*n)*p*x1^2*x2*x4 \
    + (p^2 + 2*q)*x1^2*x3^2 + (p^2 + 2*q)*m*x1^2*x3*x4 + (m^2*q + n*p^2 - 2*n*q)*x1^2*x4^2 \
    + 2*m*n*x1*x2^3 + (m^2 + 2*n)*p*x1*x2^2*x3 + 3*m*n*p*x1*x2^2*x4 + (p^2 + 2*q)*m*x1*x2*x3^2 \
    + (m^2*p^2 + 8*n*q)*x1*x2*x3*x4 + (p^2 + 2*q)*m*n*x1*x2*x4^2 + 2*p*q*x1*x3^3 \
    + 3*m*p*q*x1*x3^2*x4 + (m^2 + 2*n)*p*q*x1*x3*x4^2 + m*n*p*q*x1*x4^3 + n^2*x2^4 \
    + m*n*p*x2^3*x3 + 2*n^2*p*x2^3*x4 + (m^2*q + n*p^2 - 2*n*q)*x2^2*x3^2 \
    + (p^2 + 2*q)*m*n*x2^2*x3*x4 + (p^2 + 2*q)*n^2*x2^2*x4^2 + m*p*q*x2*x3^3 \
    + (m^2 + 2*n)*p*q*x2*x3^2*x4 + 3*m*n*p*q*x2*x3*x4^2 + 2*n^2*p*q*x2*x4^3 + q^2*x3^4 \
    + 2*m*q^2*x3^3*x4 + (m^2 + 2*n)*q^2*x3^2*x4^2 + 2*m*n*q^2*x3*x4^3 + n^2*q^2*x4^4";

pub const QUARTIC_MAP: [&str; 4] = [
    "x1*y1 - n*x2*y2 - q*x3*y3 + q*n*x4*y4",
    "x1*y2 + x2*y1 + m*x2*y2 - q*x3*y4 - q*x4*y3 - m*q*x4*y4",
    "x1*y3 - n*x2*y4 + x3*y1 + p*x3*y3 - n*x4*y2 - n*p*x4*y4",
    "x1*y4 + x2*y3 + m*x2*y4 + x3*y2 + p*x3*y4 + x4*y1 + m*x4*y2 + p*x4*y3 + m*p*x4*y4",
];

/// Coordinates of the inverse of `x` on `f = 1`, as cubic forms in `x`.
pub const QUARTIC_INVERSE: [&str; 4] = [
    "x1^3 + 2*m*x1^2*x2 + 2*p*x1^2*x3 + m*p*x1^2*x4 + (m^2 + n)*x1*x2^2 + 3*m*p*x1*x2*x3 \
     + p*(m^2 + 2*n)*x1*x2*x4 + (p^2 + q)*x1*x3^2 + m*(p^2 + 2*q)*x1*x3*x4 \
     + (m^2*q + n*p^2 - n*q)*x1*x4^2 + m*n*x2^3 + m^2*p*x2^2*x3 + 2*m*n*p*x2^2*x4 \
     + m*p^2*x2*x3^2 + (m^2*p^2 + 2*n*q)*x2*x3*x4 + m*n*(p^2 + q)*x2*x4^2 + p*q*x3^3 \
     + 2*m*p*q*x3^2*x4 + p*q*(m^2 + n)*x3*x4^2 + m*n*p*q*x4^3",
    "-x1^2*x2 - m*x1*x2^2 - 2*p*x1*x2*x3 - m*p*x1*x2*x4 - 2*q*x1*x3*x4 - m*q*x1*x4^2 - n*x2^3 \
     - m*p*x2^2*x3 - 2*n*p*x2^2*x4 + (-p^2 + q)*x2*x3^2 - m*p^2*x2*x3*x4 - n*(p^2 + q)*x2*x4^2 \
     - p*q*x3^2*x4 - m*p*q*x3*x4^2 - n*p*q*x4^3",
    "-x1^2*x3 - 2*m*x1*x2*x3 - 2*n*x1*x2*x4 - p*x1*x3^2 - m*p*x1*x3*x4 - n*p*x1*x4^2 \
     + (-m^2 + n)*x2^2*x3 - m*n*x2^2*x4 - m*p*x2*x3^2 - m^2*p*x2*x3*x4 - m*n*p*x2*x4^2 - q*x3^3 \
     - 2*m*q*x3^2*x4 - q*(m^2 + n)*x3*x4^2 - m*n*q*x4^3",
    "-x1^2*x4 + 2*x1*x2*x3 + m*x2^2*x3 + n*x2^2*x4 + p*x2*x3^2 + m*p*x2*x3*x4 + n*p*x2*x4^2 \
     + q*x3^2*x4 + m*q*x3*x4^2 + n*q*x4^3",
];

pub const SEXTIC_MAP: [&str; 6] = [
    "x1*y1 - L3*(L1 - L2 - L3 + L5)*x2*y2 - L3*(L2 - L4)*x2*y3 - L3*(L2 - L4)*x3*y2 \
     + (-L1*L4 + L2^2 - L2*L5 + L3*L4)*x3*y3 - q*x4*y4 + q*L3*(L1 - L2 - L3 + L5)*x5*y5 \
     + q*L3*(L2 - L4)*x5*y6 + q*L3*(L2 - L4)*x6*y5 + q*(L1*L4 - L2^2 + L2*L5 - L3*L4)*x6*y6",
    "x1*y2 + x2*y1 + L1*x2*y2 + L2*x2*y3 + L2*x3*y2 + L4*x3*y3 - q*x4*y5 - q*x5*y4 \
     - L1*q*x5*y5 - L2*q*x5*y6 - L2*q*x6*y5 - L4*q*x6*y6",
    "x1*y3 + L3*x2*y2 + L3*x2*y3 + x3*y1 + L3*x3*y2 + L5*x3*y3 - q*x4*y6 - q*L3*x5*y5 \
     - q*L3*x5*y6 - q*x6*y4 - q*L3*x6*y5 - L5*q*x6*y6",
    "x1*y4 - L3*(L1 - L2 - L3 + L5)*x2*y5 - L3*(L2 - L4)*x2*y6 - L3*(L2 - L4)*x3*y5 \
     + (-L1*L4 + L2^2 - L2*L5 + L3*L4)*x3*y6 + x4*y1 + p*x4*y4 - L3*(L1 - L2 - L3 + L5)*x5*y2 \
     - L3*(L2 - L4)*x5*y3 - L3*(L1 - L2 - L3 + L5)*p*x5*y5 - L3*(L2 - L4)*p*x5*y6 \
     - L3*(L2 - L4)*x6*y2 + (-L1*L4 + L2^2 - L2*L5 + L3*L4)*x6*y3 - L3*(L2 - L4)*p*x6*y5 \
     - p*(L1*L4 - L2^2 + L2*L5 - L3*L4)*x6*y6",
    "x1*y5 + x2*y4 + L1*x2*y5 + L2*x2*y6 + L2*x3*y5 + L4*x3*y6 + x4*y2 + p*x4*y5 + x5*y1 \
     + L1*x5*y2 + L2*x5*y3 + p*x5*y4 + L1*p*x5*y5 + L2*p*x5*y6 + L2*x6*y2 + L4*x6*y3 \
     + L2*p*x6*y5 + L4*p*x6*y6",
    "x1*y6 + L3*x2*y5 + L3*x2*y6 + x3*y4 + L3*x3*y5 + L5*x3*y6 + x4*y3 + p*x4*y6 + L3*x5*y2 \
     + L3*x5*y3 + L3*p*x5*y5 + L3*p*x5*y6 + x6*y1 + L3*x6*y2 + L5*x6*y3 + p*x6*y4 \
     + L3*p*x6*y5 + L5*p*x6*y6",
];

pub const CIRCULANT_F1: &str = "(x1 + x2 + x3)^2 - q*(x4 + x5 + x6)^2";

pub const CIRCULANT_F2: &str = "x1^4 - (2*x2 + 2*x3)*x1^3 \
    + (3*x2^2 + 3*x3^2 - 2*q*x4^2 + 2*q*x4*x5 + 2*q*x4*x6 + q*x5^2 - 4*q*x5*x6 + q*x6^2)*x1^2 \
    + (-2*x2^3 + 2*q*x2*x4^2 - 8*q*x2*x4*x5 + 4*q*x2*x4*x6 + 2*q*x2*x5^2 + 4*q*x2*x5*x6 \
       - 4*q*x2*x6^2 - 2*x3^3 + 2*q*x3*x4^2 + 4*q*x3*x4*x5 - 8*q*x3*x4*x6 - 4*q*x3*x5^2 \
       + 4*q*x3*x5*x6 + 2*q*x3*x6^2)*x1 \
    + x2^4 - 2*x2^3*x3 + 3*x2^2*x3^2 + q*x2^2*x4^2 + 2*q*x2^2*x4*x5 - 4*q*x2^2*x4*x6 \
    - 2*q*x2^2*x5^2 + 2*q*x2^2*x5*x6 + q*x2^2*x6^2 - 2*x2*x3^3 - 4*q*x2*x3*x4^2 \
    + 4*q*x2*x3*x4*x5 + 4*q*x2*x3*x4*x6 + 2*q*x2*x3*x5^2 - 8*q*x2*x3*x5*x6 + 2*q*x2*x3*x6^2 \
    + x3^4 + q*x3^2*x4^2 - 4*q*x3^2*x4*x5 + 2*q*x3^2*x4*x6 + q*x3^2*x5^2 + 2*q*x3^2*x5*x6 \
    - 2*q*x3^2*x6^2 + q^2*x4^4 - 2*q^2*x4^3*x5 - 2*q^2*x4^3*x6 + 3*q^2*x4^2*x5^2 \
    + 3*q^2*x4^2*x6^2 - 2*q^2*x4*x5^3 - 2*q^2*x4*x6^3 + q^2*x5^4 - 2*q^2*x5^3*x6 \
    + 3*q^2*x5^2*x6^2 - 2*q^2*x5*x6^3 + q^2*x6^4";

pub const CIRCULANT_MAP: [&str; 6] = [
    "x1*y1 + x2*y3 + x3*y2 + q*x4*y4 + q*x5*y6 + q*x6*y5",
    "x1*y2 + x2*y1 + x3*y3 + q*x4*y5 + q*x5*y4 + q*x6*y6",
    "x1*y3 + x2*y2 + x3*y1 + q*x4*y6 + q*x5*y5 + q*x6*y4",
    "x1*y4 + x2*y6 + x3*y5 + x4*y1 + x5*y3 + x6*y2",
    "x1*y5 + x2*y4 + x3*y6 + x4*y2 + x5*y1 + x6*y3",
    "x1*y6 + x2*y5 + x3*y4 + x4*y3 + x5*y2 + x6*y1",
];

pub const UV_F1: &str = "x1^2 - q*x2^2";

pub const UV_F2: &str = "x1^4 - (6*x3 + 6*x6)*x1^3 \
    + (q*x2^2 - 6*q*x2*x5 + 15*x3^2 + 24*x3*x6 - 3*q*x4^2 + 6*q*x4*x5 + 6*q*x5^2 + 15*x6^2)*x1^2 \
    + (-6*q*x2^2*x6 - 12*q*x2*x3*x4 + 12*q*x2*x3*x5 + 12*q*x2*x4*x6 + 24*q*x2*x5*x6 - 18*x3^3 \
       - 36*x3^2*x6 + 18*q*x3*x4^2 - 18*q*x3*x5^2 - 36*x3*x6^2 - 36*q*x4*x5*x6 - 18*q*x5^2*x6 \
       - 18*x6^3)*x1 \
    + q^2*x2^4 - 6*q^2*x2^3*x4 - 6*q^2*x2^3*x5 + 15*q^2*x2^2*x4^2 + 24*q^2*x2^2*x4*x5 \
    + 15*q^2*x2^2*x5^2 - 18*q^2*x2*x4^3 - 36*q^2*x2*x4^2*x5 - 36*q^2*x2*x4*x5^2 \
    - 18*q^2*x2*x5^3 + 9*q^2*x4^4 + 18*q^2*x4^3*x5 + 27*q^2*x4^2*x5^2 + 18*q^2*x4*x5^3 \
    + 9*q^2*x5^4 - 3*q*x2^2*x3^2 + 6*q*x2^2*x3*x6 + 6*q*x2^2*x6^2 + 18*q*x2*x3^2*x4 \
    - 36*q*x2*x3*x5*x6 - 18*q*x2*x4*x6^2 - 18*q*x2*x5*x6^2 - 18*q*x3^2*x4^2 - 18*q*x3^2*x4*x5 \
    + 9*q*x3^2*x5^2 - 18*q*x3*x4^2*x6 + 36*q*x3*x4*x5*x6 + 36*q*x3*x5^2*x6 + 9*q*x4^2*x6^2 \
    + 36*q*x4*x5*x6^2 + 9*q*x5^2*x6^2 + 9*x3^4 + 18*x3^3*x6 + 27*x3^2*x6^2 + 18*x3*x6^3 + 9*x6^4";

pub const UV_MAP: [&str; 6] = [
    "x1*y1 + q*x2*y2",
    "x1*y2 + x2*y1",
    "x1*y3 + q*x2*y4 + x3*y1 - 2*x3*y3 - x3*y6 + q*x4*y2 - 2*q*x4*y4 - q*x4*y5 - q*x5*y4 \
     + q*x5*y5 - x6*y3 + x6*y6",
    "x1*y4 + x2*y6 - x3*y4 + x3*y5 + x4*y1 - x4*y3 - 2*x4*y6 + x5*y3 - x5*y6 + x6*y2 \
     - 2*x6*y4 - x6*y5",
    "x1*y5 + x2*y3 + x3*y2 - x3*y4 - 2*x3*y5 - x4*y3 + x4*y6 + x5*y1 - 2*x5*y3 - x5*y6 \
     + x6*y4 - x6*y5",
    "x1*y6 + q*x2*y2 - q*x2*y4 - q*x2*y5 + x3*y3 - x3*y6 - q*x4*y2 + q*x4*y4 + 2*q*x4*y5 \
     - q*x5*y2 + 2*q*x5*y4 + q*x5*y5 + x6*y1 - x6*y3 - 2*x6*y6",
];

/// `f2` at `q = 3`, the second equation of the system.
pub const UV_F2_Q3: &str = "x1^4 - 6*x1^3*x3 - 6*x1^3*x6 + 3*x1^2*x2^2 - 18*x1^2*x2*x5 + 15*x1^2*x3^2 \
    + 24*x1^2*x3*x6 - 9*x1^2*x4^2 + 18*x1^2*x4*x5 + 18*x1^2*x5^2 + 15*x1^2*x6^2 \
    - 18*x1*x2^2*x6 - 36*x1*x2*x3*x4 + 36*x1*x2*x3*x5 + 36*x1*x2*x4*x6 \
    + 72*x1*x2*x5*x6 - 18*x1*x3^3 - 36*x1*x3^2*x6 + 54*x1*x3*x4^2 - 54*x1*x3*x5^2 \
    - 36*x1*x3*x6^2 - 108*x1*x4*x5*x6 - 54*x1*x5^2*x6 - 18*x1*x6^3 + 9*x2^4 \
    - 54*x2^3*x4 - 54*x2^3*x5 - 9*x2^2*x3^2 + 18*x2^2*x3*x6 + 135*x2^2*x4^2 \
    + 216*x2^2*x4*x5 + 135*x2^2*x5^2 + 18*x2^2*x6^2 + 54*x2*x3^2*x4 \
    - 108*x2*x3*x5*x6 - 162*x2*x4^3 - 324*x2*x4^2*x5 - 324*x2*x4*x5^2 \
    - 54*x2*x4*x6^2 - 162*x2*x5^3 - 54*x2*x5*x6^2 + 9*x3^4 + 18*x3^3*x6 \
    - 54*x3^2*x4^2 - 54*x3^2*x4*x5 + 27*x3^2*x5^2 + 27*x3^2*x6^2 - 54*x3*x4^2*x6 \
    + 108*x3*x4*x5*x6 + 108*x3*x5^2*x6 + 18*x3*x6^3 + 81*x4^4 + 162*x4^3*x5 \
    + 243*x4^2*x5^2 + 27*x4^2*x6^2 + 162*x4*x5^3 + 108*x4*x5*x6^2 + 81*x5^4 \
    + 27*x5^2*x6^2 + 9*x6^4";

/// The quartic at `(m, n, p, q) = (5, -23, 2, -7)`.
pub const QUARTIC_EXAMPLE: &str = "x1^4 + 10*x1^3*x2 + 4*x1^3*x3 + 10*x1^3*x4 - 21*x1^2*x2^2 \
    + 30*x1^2*x2*x3 - 42*x1^2*x2*x4 - 10*x1^2*x3^2 - 50*x1^2*x3*x4 - 589*x1^2*x4^2 \
    - 230*x1*x2^3 - 42*x1*x2^2*x3 - 690*x1*x2^2*x4 - 50*x1*x2*x3^2 + 1388*x1*x2*x3*x4 \
    + 1150*x1*x2*x4^2 - 28*x1*x3^3 - 210*x1*x3^2*x4 + 294*x1*x3*x4^2 + 1610*x1*x4^3 \
    + 529*x2^4 - 230*x2^3*x3 + 2116*x2^3*x4 - 589*x2^2*x3^2 + 1150*x2^2*x3*x4 \
    - 5290*x2^2*x4^2 - 70*x2*x3^3 + 294*x2*x3^2*x4 + 4830*x2*x3*x4^2 - 14812*x2*x4^3 \
    + 49*x3^4 + 490*x3^3*x4 - 1029*x3^2*x4^2 - 11270*x3*x4^3 + 25921*x4^4";

pub const OCTIC_MAP: [&str; 8] = [
    "x1*y1 - n*x2*y2 - q*x3*y3 + q*n*x4*y4 - s*x5*y5 + s*n*x6*y6 + s*q*x7*y7 - s*q*n*x8*y8",
    "x1*y2 + x2*y1 + m*x2*y2 - q*x3*y4 - q*x4*y3 - q*m*x4*y4 - s*x5*y6 - s*x6*y5 - s*m*x6*y6 \
     + s*q*x7*y8 + s*q*x8*y7 + s*q*m*x8*y8",
    "x1*y3 - n*x2*y4 + x3*y1 + p*x3*y3 - n*x4*y2 - n*p*x4*y4 - s*x5*y7 + s*n*x6*y8 - s*x7*y5 \
     - s*p*x7*y7 + s*n*x8*y6 + s*n*p*x8*y8",
    "x1*y4 + x2*y3 + m*x2*y4 + x3*y2 + p*x3*y4 + x4*y1 + m*x4*y2 + p*x4*y3 + p*m*x4*y4 \
     - s*x5*y8 - s*x6*y7 - s*m*x6*y8 - s*x7*y6 - s*p*x7*y8 - s*x8*y5 - s*m*x8*y6 - s*p*x8*y7 \
     - s*p*m*x8*y8",
    "x1*y5 - n*x2*y6 - q*x3*y7 + q*n*x4*y8 + x5*y1 + r*x5*y5 - n*x6*y2 - n*r*x6*y6 - q*x7*y3 \
     - q*r*x7*y7 + q*n*x8*y4 + n*q*r*x8*y8",
    "x1*y6 + x2*y5 + m*x2*y6 - q*x3*y8 - q*x4*y7 - q*m*x4*y8 + x5*y2 + r*x5*y6 + x6*y1 \
     + m*x6*y2 + r*x6*y5 + r*m*x6*y6 - q*x7*y4 - q*r*x7*y8 - q*x8*y3 - q*m*x8*y4 - q*r*x8*y7 \
     - q*r*m*x8*y8",
    "x1*y7 - n*x2*y8 + x3*y5 + p*x3*y7 - n*x4*y6 - n*p*x4*y8 + x5*y3 + r*x5*y7 - n*x6*y4 \
     - n*r*x6*y8 + x7*y1 + p*x7*y3 + r*x7*y5 + r*p*x7*y7 - n*x8*y2 - n*p*x8*y4 - n*r*x8*y6 \
     - r*n*p*x8*y8",
    "x1*y8 + x2*y7 + m*x2*y8 + x3*y6 + p*x3*y8 + x4*y5 + m*x4*y6 + p*x4*y7 + p*m*x4*y8 \
     + x5*y4 + r*x5*y8 + x6*y3 + m*x6*y4 + r*x6*y7 + r*m*x6*y8 + x7*y2 + p*x7*y4 + r*x7*y6 \
     + r*p*x7*y8 + x8*y1 + m*x8*y2 + p*x8*y3 + p*m*x8*y4 + r*x8*y5 + r*m*x8*y6 + r*p*x8*y7 \
     + r*p*m*x8*y8",
];

pub const THREEFOLD_QUADRATIC_FORM: &str = "a*x1^2 + b*x1*x2 + c*x2^2";

/// The two trilinear coordinates; the three variants of the law permute
/// the arguments cyclically.
pub const THREEFOLD_QUADRATIC_MAP: [&str; 2] = [
    "a*x1*y1*z1 + b*x1*y2*z1 + c*x1*y2*z2 - c*x2*y1*z2 + c*x2*y2*z1",
    "a*x1*y1*z2 - a*x1*y2*z1 + a*x2*y1*z1 + b*x2*y1*z2 + c*x2*y2*z2",
];

/// Trilinear coordinates for the trace-free 2x2 structure, before `t^2` is
/// renamed.
pub const TRACE_FREE_W: [&str; 2] = [
    "t^2*x1*y1*z1 + b*x1*y2*z1 + c*x1*y2*z2 - c*x2*y1*z2 + c*x2*y2*z1",
    "t^2*x1*y1*z2 - t^2*x1*y2*z1 + t^2*x2*y1*z1 + b*x2*y1*z2 + c*x2*y2*z2",
];

/// The three-fold quartic at `(m, n, p, q, s, t) = (-1, -4, 1, -1, 1, 1)`.
pub const THREEFOLD4_EXAMPLE: &str = "x1^4 - 2*x1^3*x2 + 2*x1^3*x3 - x1^3*x4 - 7*x1^2*x2^2 \
    - 3*x1^2*x2*x3 - 7*x1^2*x2*x4 - x1^2*x3^2 + x1^2*x3*x4 - 13*x1^2*x4^2 + 8*x1*x2^3 \
    - 7*x1*x2^2*x3 + 12*x1*x2^2*x4 + x1*x2*x3^2 + 33*x1*x2*x3*x4 - 4*x1*x2*x4^2 \
    - 2*x1*x3^3 + 3*x1*x3^2*x4 + 7*x1*x3*x4^2 - 4*x1*x4^3 + 16*x2^4 + 4*x2^3*x3 \
    + 32*x2^3*x4 - 13*x2^2*x3^2 - 4*x2^2*x3*x4 - 16*x2^2*x4^2 + x2*x3^3 + 7*x2*x3^2*x4 \
    - 12*x2*x3*x4^2 - 32*x2*x4^3 + x3^4 - 2*x3^3*x4 - 7*x3^2*x4^2 + 8*x3*x4^3 + 16*x4^4";

pub const THREEFOLD4_FORM: &str = "s^4*t^4*x1^4 + 2*s^2*t^4*m*x1^3*x2 + 2*s^4*t^2*p*x1^3*x3 \
    + s^2*t^2*m*p*x1^3*x4 + (m^2 + 2*s^2*n)*t^4*x1^2*x2^2 + 3*s^2*t^2*m*p*x1^2*x2*x3 \
    + (m^2 + 2*s^2*n)*t^2*p*x1^2*x2*x4 + (p^2 + 2*t^2*q)*s^4*x1^2*x3^2 \
    + (p^2 + 2*t^2*q)*s^2*m*x1^2*x3*x4 + (s^2*n*p^2 + t^2*m^2*q - 2*s^2*t^2*n*q)*x1^2*x4^2 \
    + 2*t^4*m*n*x1*x2^3 + (m^2 + 2*s^2*n)*t^2*p*x1*x2^2*x3 + 3*t^2*m*n*p*x1*x2^2*x4 \
    + (p^2 + 2*t^2*q)*s^2*m*x1*x2*x3^2 + (m^2*p^2 + 8*s^2*t^2*n*q)*x1*x2*x3*x4 \
    + (p^2 + 2*t^2*q)*m*n*x1*x2*x4^2 + 2*s^4*p*q*x1*x3^3 + 3*s^2*m*p*q*x1*x3^2*x4 \
    + (m^2 + 2*s^2*n)*p*q*x1*x3*x4^2 + m*n*p*q*x1*x4^3 + t^4*n^2*x2^4 + t^2*m*n*p*x2^3*x3 \
    + 2*t^2*n^2*p*x2^3*x4 + (s^2*n*p^2 + t^2*m^2*q - 2*s^2*t^2*n*q)*x2^2*x3^2 \
    + (p^2 + 2*t^2*q)*m*n*x2^2*x3*x4 + (p^2 + 2*t^2*q)*n^2*x2^2*x4^2 + s^2*m*p*q*x2*x3^3 \
    + (m^2 + 2*s^2*n)*p*q*x2*x3^2*x4 + 3*m*n*p*q*x2*x3*x4^2 + 2*n^2*p*q*x2*x4^3 \
    + s^4*q^2*x3^4 + 2*s^2*m*q^2*x3^3*x4 + (m^2 + 2*s^2*n)*q^2*x3^2*x4^2 \
    + 2*m*n*q^2*x3*x4^3 + n^2*q^2*x4^4";

pub const THREEFOLD4_MAP: [&str; 4] = [
    "s^2*t^2*x1*y1*z1 + m*t^2*x1*y2*z1 + n*t^2*x1*y2*z2 - n*t^2*x2*y1*z2 + n*t^2*x2*y2*z1 \
     + p*s^2*x1*y3*z1 + q*s^2*x1*y3*z3 - q*s^2*x3*y1*z3 + q*s^2*x3*y3*z1 + m*p*x1*y4*z1 \
     + m*q*x1*y4*z3 - m*q*x3*y2*z3 + m*q*x3*y4*z1 + n*p*x1*y4*z2 - n*p*x2*y3*z2 \
     + n*p*x2*y4*z1 + n*q*x1*y4*z4 - n*q*x2*y3*z4 + n*q*x2*y4*z3 - n*q*x3*y2*z4 \
     + n*q*x3*y4*z2 + n*q*x4*y1*z4 - n*q*x4*y2*z3 - n*q*x4*y3*z2 + n*q*x4*y4*z1",
    "s^2*t^2*x1*y1*z2 - s^2*t^2*x1*y2*z1 + s^2*t^2*x2*y1*z1 + m*t^2*x2*y1*z2 \
     + n*t^2*x2*y2*z2 + p*s^2*x1*y3*z2 - p*s^2*x1*y4*z1 + p*s^2*x2*y3*z1 + q*s^2*x1*y3*z4 \
     - q*s^2*x1*y4*z3 + q*s^2*x2*y3*z3 - q*s^2*x3*y1*z4 + q*s^2*x3*y2*z3 + q*s^2*x3*y3*z2 \
     - q*s^2*x3*y4*z1 - q*s^2*x4*y1*z3 + q*s^2*x4*y3*z1 + m*p*x2*y3*z2 + m*q*x2*y3*z4 \
     - m*q*x4*y1*z4 + m*q*x4*y3*z2 + n*p*x2*y4*z2 + n*q*x2*y4*z4 - n*q*x4*y2*z4 \
     + n*q*x4*y4*z2",
    "s^2*t^2*x1*y1*z3 - s^2*t^2*x1*y3*z1 + s^2*t^2*x3*y1*z1 + m*t^2*x1*y2*z3 \
     - m*t^2*x1*y4*z1 + m*t^2*x3*y2*z1 + n*t^2*x1*y2*z4 - n*t^2*x1*y4*z2 - n*t^2*x2*y1*z4 \
     + n*t^2*x2*y2*z3 + n*t^2*x2*y3*z2 - n*t^2*x2*y4*z1 + n*t^2*x3*y2*z2 - n*t^2*x4*y1*z2 \
     + n*t^2*x4*y2*z1 + p*s^2*x3*y1*z3 + q*s^2*x3*y3*z3 + m*p*x3*y2*z3 + m*q*x3*y4*z3 \
     + n*p*x3*y2*z4 - n*p*x4*y1*z4 + n*p*x4*y2*z3 + n*q*x3*y4*z4 - n*q*x4*y3*z4 \
     + n*q*x4*y4*z3",
    "s^2*t^2*x1*y1*z4 - s^2*t^2*x1*y2*z3 - s^2*t^2*x1*y3*z2 + s^2*t^2*x1*y4*z1 \
     + s^2*t^2*x2*y1*z3 - s^2*t^2*x2*y3*z1 + s^2*t^2*x3*y1*z2 - s^2*t^2*x3*y2*z1 \
     + s^2*t^2*x4*y1*z1 + m*t^2*x2*y1*z4 - m*t^2*x2*y3*z2 + m*t^2*x4*y1*z2 \
     + n*t^2*x2*y2*z4 - n*t^2*x2*y4*z2 + n*t^2*x4*y2*z2 + p*s^2*x3*y1*z4 - p*s^2*x3*y2*z3 \
     + p*s^2*x4*y1*z3 + q*s^2*x3*y3*z4 - q*s^2*x3*y4*z3 + q*s^2*x4*y3*z3 + m*p*x4*y1*z4 \
     + m*q*x4*y3*z4 + n*p*x4*y2*z4 + n*q*x4*y4*z4",
];

/// Expands the `L<k>` shorthand.
pub fn expand(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 32);
    let b = text.as_bytes();
    for (i, ch) in text.char_indices() {
        let standalone = ch == 'L'
            && b.get(i + 1).is_some_and(u8::is_ascii_digit)
            && (i == 0 || !b[i - 1].is_ascii_alphanumeric());
        if standalone {
            out.push_str("lambda");
        } else {
            out.push(ch);
        }
    }
    out
}

/// Parses a transcribed form over `table`.
pub fn parse_form(table: &Arc<VarTable>, text: &str) -> Result<Polynomial, PolyError> {
    Polynomial::parse(table, &expand(text))
}

/// Parses a transcribed map with coefficients over `params`.
pub fn parse_map(
    params: &Arc<VarTable>,
    k: usize,
    texts: &[&str],
) -> Result<MultilinearMap, ComposeError> {
    let expanded: Vec<String> = texts.iter().map(|t| expand(t)).collect();
    let refs: Vec<&str> = expanded.iter().map(String::as_str).collect();
    MultilinearMap::parse(params, k, &refs)
}
