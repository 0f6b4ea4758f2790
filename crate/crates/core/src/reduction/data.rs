//! Reference target forms and reduction outputs, written in the text
//! syntax of [`crate::diffform::DiffForm`] (`m1..m6` allowed).

/// `T_{a,b}`, term by term as displayed (38 terms before collecting).
pub const T_AB: [&str; 38] = [
    "4*n*p^4*u[0,1]^2*u[1,0]^2",
    "2*n*p^3*u*u[0,1]^2*u[2,0]",
    "8*n*p^3*u*u[0,1]*u[1,0]*u[1,1]",
    "4*n*p^3*u*u[0,2]*u[1,0]^2",
    "-15*n*p^3*u[0,1]^2*u[1,0]^2",
    "-mu*p^3*u[0,1]^2*u[1,0]^2",
    "2*n*p^2*u^2*u[0,1]*u[2,1]",
    "2*n*p^2*u^2*u[0,2]*u[2,0]",
    "4*n*p^2*u^2*u[1,0]*u[1,2]",
    "2*n*p^2*u^2*u[1,1]^2",
    "-3*n*p^2*u*u[0,1]^2*u[2,0]",
    "-20*n*p^2*u*u[0,1]*u[1,0]*u[1,1]",
    "-8*n*p^2*u*u[0,2]*u[1,0]^2",
    "-mu*p^2*u*u[0,1]^2*u[2,0]",
    "-mu*p^2*u*u[0,2]*u[1,0]^2",
    "16*n*p^2*u[0,1]^2*u[1,0]^2",
    "5*mu*p^2*u[0,1]^2*u[1,0]^2",
    "n*p*u^3*u[2,2]",
    "-2*n*p*u^2*u[0,1]*u[2,1]",
    "-n*p*u^2*u[0,2]*u[2,0]",
    "-4*n*p*u^2*u[1,0]*u[1,2]",
    "-2*n*p*u^2*u[1,1]^2",
    "-mu*p*u^2*u[0,2]*u[2,0]",
    "-n*p*u*u[0,1]^2*u[2,0]",
    "12*n*p*u*u[0,1]*u[1,0]*u[1,1]",
    "2*n*p*u*u[0,2]*u[1,0]^2",
    "3*mu*p*u*u[0,1]^2*u[2,0]",
    "3*mu*p*u*u[0,2]*u[1,0]^2",
    "-n*p*u[0,1]^2*u[1,0]^2",
    "-8*mu*p*u[0,1]^2*u[1,0]^2",
    "-n*u^2*u[0,2]*u[2,0]",
    "mu*u^2*u[0,2]*u[2,0]",
    "2*n*u*u[0,1]^2*u[2,0]",
    "2*n*u*u[0,2]*u[1,0]^2",
    "-2*mu*u*u[0,1]^2*u[2,0]",
    "-2*mu*u*u[0,2]*u[1,0]^2",
    "-4*n*u[0,1]^2*u[1,0]^2",
    "4*mu*u[0,1]^2*u[1,0]^2",
];

/// The reduced quadratic form before the last elimination step.
pub const L_HAT: &str = "(2*n*p+2*n-2*mu)*m2*m2 \
    + (5*n*p-5*n*p^2+5*p*mu+4*n-4*mu)*m3*m4 \
    + (18*n*p^2-7*n*p^3+7*p^2*mu-3*n*p-19*p*mu-12*n+12*mu)*m5*m5 \
    + c1/n*(2*n-2)*(p^2-2*p+1)*m2*m2 \
    + c1/n*(4*n-2*n*p+5*p-4)*(p^2-2*p+1)*m3*m4 \
    + c1/n*(14*n*p-4*n*p^2+7*p^2-12*n-19*p+12)*(p^2-2*p+1)*m5*m5";

/// Displayed multipliers taking `L_{a,b}` to `L_HAT`:
/// `(reference set, 1-based index, multiplier)`, subtracted from `L_{a,b}`.
pub const L_HAT_PATH: [(char, usize, &str); 6] = [
    ('h', 7, "2*(p^3*c1+4*n*p^2-4*p^2*c1-6*n*p+5*p*c1-2*c1)"),
    ('h', 8, "2/n*(2*n^2*p-p^2*c1+n^2-n*mu+2*p*c1-c1)"),
    ('h', 9, "1/n*(6*n^2*p^2-2*p^3*c1-5*n^2*p-2*n*p*mu+8*p^2*c1-4*n^2+4*n*mu-10*p*c1+4*c1)"),
    ('t', 11, "2*n*p/(p-1)"),
    ('t', 12, "6*n*p"),
    ('t', 13, "6*n*p"),
];

pub const P7: &str = "(2*n*p^3*c1+5*n^2*p^2-8*n*p^2*c1-5*p^3*c1-5*n^2*p-5*n*p*mu+10*n*p*c1\
    +14*p^2*c1-4*n^2+4*n*mu-4*n*c1-13*p*c1+4*c1)/n";

pub const A1: &str = "-2*c1*p^2/n+4*c1*p/n+2*n*p+2*c1+2*c1*p^2-4*c1*p-2*c1/n-2*mu+2*n";

pub const A2: &str = "4*c1*p^3-16*c1*p^2-10*c1*p^3/n-10*p*mu+20*c1*p+28*c1*p^2/n-26*c1*p/n\
    +10*n*p^2-10*n*p+8*mu-8*c1+8*c1/n-8*n";

pub const A3: &str = "-8*mu+8*n+26*c1*p^2-24*c1*p-8*c1/n-12*c1*p^3+2*c1*p^4+8*c1-52*c1*p^2/n\
    +34*c1*p/n+34*c1*p^3/n-8*c1*p^4/n+18*p*mu+8*n*p^3-22*n*p^2-8*p^2*mu+10*n*p";
