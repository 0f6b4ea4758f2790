//! Reference constraint lists: the 28 second-order constraints, and the
//! quadratic / non-quadratic sets obtained from them by elimination.

use crate::diffform::{Axis, DerivSymbol, DiffForm, DiffMonomial, UPower};

/// Expand `m1..m6` into their differential monomials before parsing.
pub(crate) fn expand_m(s: &str) -> String {
    const M: [(&str, &str); 6] = [
        ("m1", "u*u[0,2]"),
        ("m2", "u*u[1,1]"),
        ("m3", "u*u[2,0]"),
        ("m4", "u[0,1]^2"),
        ("m5", "u[1,0]*u[0,1]"),
        ("m6", "u[1,0]^2"),
    ];
    let mut out = s.to_string();
    for (k, v) in M {
        out = out.replace(k, v);
    }
    out
}

pub(crate) fn parse(s: &str) -> DiffForm {
    expand_m(s).parse().expect("reference data parses")
}

pub const R_LIST: [&str; 28] = [
    "3*p*u[1,0]^4 + 3*u*u[2,0]*u[1,0]^2 - 5*u[1,0]^4",
    "3*p*u[0,1]^4 + 3*u*u[0,2]*u[0,1]^2 - 5*u[0,1]^4",
    "3*p*u^2*u[1,0]*u[3,0] + u^3*u[4,0] - 3*u^2*u[1,0]*u[3,0]",
    "3*p*u^2*u[0,1]*u[3,0] + u^3*u[3,1] - 3*u^2*u[0,1]*u[3,0]",
    "3*p*u^2*u[1,0]*u[2,1] + u^3*u[3,1] - 3*u^2*u[1,0]*u[2,1]",
    "3*p*u^2*u[0,1]*u[2,1] + u^3*u[2,2] - 3*u^2*u[0,1]*u[2,1]",
    "3*p*u^2*u[1,0]*u[1,2] + u^3*u[2,2] - 3*u^2*u[1,0]*u[1,2]",
    "3*p*u^2*u[0,1]*u[1,2] + u^3*u[1,3] - 3*u^2*u[0,1]*u[1,2]",
    "3*p*u^2*u[1,0]*u[0,3] + u^3*u[1,3] - 3*u^2*u[1,0]*u[0,3]",
    "3*p*u^2*u[0,1]*u[0,3] + u^3*u[0,4] - 3*u^2*u[0,1]*u[0,3]",
    "3*p*u[0,1]*u[1,0]^3 + 3*u*u[1,1]*u[1,0]^2 - 5*u[1,0]^3*u[0,1]",
    "3*p*u[0,1]^3*u[1,0] + 3*u*u[1,1]*u[0,1]^2 - 5*u[0,1]^3*u[1,0]",
    "3*p*u[0,1]^2*u[1,0]^2 + 2*u*u[0,1]*u[1,0]*u[1,1] + u*u[1,0]^2*u[0,2] - 5*u[1,0]^2*u[0,1]^2",
    "3*p*u*u[1,0]^2*u[2,0] + u^2*u[1,0]*u[3,0] + u^2*u[2,0]^2 - 4*u*u[2,0]*u[1,0]^2",
    "3*p*u*u[0,1]*u[1,0]*u[2,0] + u^2*u[0,1]*u[3,0] + u^2*u[1,1]*u[2,0] - 4*u*u[2,0]*u[1,0]*u[0,1]",
    "3*p*u*u[1,0]^2*u[1,1] + u^2*u[1,0]*u[2,1] + u^2*u[1,1]*u[2,0] - 4*u*u[1,1]*u[1,0]^2",
    "3*p*u*u[0,1]*u[1,0]*u[2,0] + u^2*u[1,0]*u[2,1] + u^2*u[1,1]*u[2,0] - 4*u*u[2,0]*u[1,0]*u[0,1]",
    "3*p*u*u[0,1]^2*u[2,0] + u^2*u[0,1]*u[2,1] + u^2*u[0,2]*u[2,0] - 4*u*u[0,1]^2*u[2,0]",
    "3*p*u*u[0,1]*u[1,0]*u[1,1] + u^2*u[0,1]*u[2,1] + u^2*u[1,1]^2 - 4*u*u[0,1]*u[1,0]*u[1,1]",
    "3*p*u*u[1,0]^2*u[0,2] + u^2*u[1,0]*u[1,2] + u^2*u[0,2]*u[2,0] - 4*u*u[1,0]^2*u[0,2]",
    "3*p*u*u[0,1]*u[1,0]*u[1,1] + u^2*u[1,0]*u[1,2] + u^2*u[1,1]^2 - 4*u*u[0,1]*u[1,0]*u[1,1]",
    "3*p*u*u[0,1]^2*u[1,1] + u^2*u[0,1]*u[1,2] + u^2*u[0,2]*u[1,1] - 4*u*u[1,1]*u[0,1]^2",
    "3*p*u*u[0,1]*u[1,0]*u[0,2] + u^2*u[0,1]*u[1,2] + u^2*u[0,2]*u[1,1] - 4*u*u[0,2]*u[1,0]*u[0,1]",
    "3*p*u*u[0,1]*u[1,0]*u[0,2] + u^2*u[1,0]*u[0,3] + u^2*u[0,2]*u[1,1] - 4*u*u[0,2]*u[1,0]*u[0,1]",
    "3*p*u*u[0,1]^2*u[0,2] + u^2*u[0,1]*u[0,3] + u^2*u[0,2]^2 - 4*u*u[0,2]*u[0,1]^2",
    "3*p*u[0,1]*u[1,0]^3 + 2*u*u[2,0]*u[1,0]*u[0,1] + u*u[1,1]*u[1,0]^2 - 5*u[1,0]^3*u[0,1]",
    "3*p*u[0,1]^2*u[1,0]^2 + u*u[0,1]^2*u[2,0] + 2*u*u[0,1]*u[1,0]*u[1,1] - 5*u[1,0]^2*u[0,1]^2",
    "3*p*u[0,1]^3*u[1,0] + u*u[1,1]*u[0,1]^2 + 2*u*u[0,2]*u[1,0]*u[0,1] - 5*u[0,1]^3*u[1,0]",
];

/// The quadratic part after elimination, in `m1..m6`.
pub const R_HAT: [&str; 9] = [
    "2*m1*m5 + 2*(3*p-5)/3*m4*m5",
    "m2*m6 + (3*p-5)/3*m5*m6",
    "-6*m3*m5 + 2*(5-3*p)*m5*m6",
    "(3*p-5)*m4*m4 + 3*m1*m4",
    "(3*p-5)*m6*m6 + 3*m3*m6",
    "(3*p-5)*m4*m5 + 3*m2*m4",
    "(3*p-5)*m5*m5 + 2*m2*m5 + m3*m4",
    "m1*m3 - m2*m2 + (9*p-12)/2*m3*m4 + (9*p^2-27*p+20)/2*m5*m5",
    "m1*m6 - m3*m4",
];

/// The non-quadratic part, one head monomial each.
pub const R_TILDE: [&str; 13] = [
    "u^3*u[0,4] + (3-3*p)*m1*m1 + (9*p^3-36*p^2+47*p-20)*m4*m4",
    "u^3*u[1,3] + (3-3*p)*m1*m2 + (9*p^3-36*p^2+47*p-20)*m4*m5",
    "u^3*u[3,1] + (3-3*p)*m2*m3 + (-9*p^2+21*p-12)*m3*m5",
    "u^3*u[4,0] + (3-3*p)*m3*m3 + (9*p^3-36*p^2+47*p-20)*m6*m6",
    "u^2*u[0,1]*u[0,3] + m1*m1 + (-9*p^2+27*p-20)/3*m4*m4",
    "u^2*u[0,1]*u[1,2] + m1*m2 + (-9*p^2+27*p-20)/3*m4*m5",
    "u^2*u[0,1]*u[3,0] + m2*m3 + (-9*p^2+27*p-20)/3*m5*m6",
    "u^2*u[1,0]*u[0,3] + m1*m2 + (-9*p^2+27*p-20)/3*m4*m5",
    "u^2*u[1,0]*u[2,1] + m2*m3 + (-9*p^2+27*p-20)/3*m5*m6",
    "u^2*u[1,0]*u[3,0] + m3*m3 + (-9*p^2+27*p-20)/3*m6*m6",
    "u^3*u[2,2] + (3-3*p)*m2*m2 + (9*p^2-21*p+12)/2*m3*m4 + (27*p^3-108*p^2+141*p-60)/2*m5*m5",
    "u^2*u[0,1]*u[2,1] + m2*m2 + (4-3*p)/2*m3*m4 + (-9*p^2+27*p-20)/2*m5*m5",
    "u^2*u[1,0]*u[1,2] + m2*m2 + (4-3*p)/2*m3*m4 + (-9*p^2+27*p-20)/2*m5*m5",
];

/// `(seed, peeled factor, axis)` regenerating each of `R1..R28`.
/// Seeds are written as `(u-power, [(h1, h2, exponent)])`.
pub(crate) type SeedSpec = (i32, &'static [(u8, u8, u32)], (u8, u8), Axis);

pub(crate) const SEEDS: [SeedSpec; 28] = [
    (1, &[(2, 0, 1), (1, 0, 2)], (2, 0), Axis::A),
    (1, &[(0, 2, 1), (0, 1, 2)], (0, 2), Axis::B),
    (3, &[(4, 0, 1)], (4, 0), Axis::A),
    (3, &[(3, 1, 1)], (3, 1), Axis::B),
    (3, &[(3, 1, 1)], (3, 1), Axis::A),
    (3, &[(2, 2, 1)], (2, 2), Axis::B),
    (3, &[(2, 2, 1)], (2, 2), Axis::A),
    (3, &[(1, 3, 1)], (1, 3), Axis::B),
    (3, &[(1, 3, 1)], (1, 3), Axis::A),
    (3, &[(0, 4, 1)], (0, 4), Axis::B),
    (1, &[(1, 1, 1), (1, 0, 2)], (1, 1), Axis::B),
    (1, &[(1, 1, 1), (0, 1, 2)], (1, 1), Axis::A),
    (1, &[(0, 2, 1), (1, 0, 2)], (0, 2), Axis::B),
    (2, &[(3, 0, 1), (1, 0, 1)], (3, 0), Axis::A),
    (2, &[(3, 0, 1), (0, 1, 1)], (3, 0), Axis::A),
    (2, &[(2, 1, 1), (1, 0, 1)], (2, 1), Axis::A),
    (2, &[(2, 1, 1), (1, 0, 1)], (2, 1), Axis::B),
    (2, &[(2, 0, 1), (0, 2, 1)], (0, 2), Axis::B),
    (2, &[(1, 1, 2)], (1, 1), Axis::A),
    (2, &[(1, 2, 1), (1, 0, 1)], (1, 2), Axis::A),
    (2, &[(1, 2, 1), (1, 0, 1)], (1, 2), Axis::B),
    (2, &[(1, 2, 1), (0, 1, 1)], (1, 2), Axis::B),
    (2, &[(1, 2, 1), (0, 1, 1)], (1, 2), Axis::A),
    (2, &[(0, 3, 1), (1, 0, 1)], (0, 3), Axis::B),
    (2, &[(0, 3, 1), (0, 1, 1)], (0, 3), Axis::B),
    (1, &[(2, 0, 1), (1, 0, 1), (0, 1, 1)], (2, 0), Axis::A),
    (1, &[(2, 0, 1), (0, 1, 2)], (2, 0), Axis::A),
    (1, &[(0, 2, 1), (1, 0, 1), (0, 1, 1)], (0, 2), Axis::B),
];

pub(crate) fn seed_of(i: usize) -> (DiffMonomial, DerivSymbol, Axis) {
    let (up, d, (h1, h2), axis) = SEEDS[i];
    let m = DiffMonomial::new(UPower::int(up), d).expect("seed data valid");
    (m, DerivSymbol { h1, h2 }, axis)
}
