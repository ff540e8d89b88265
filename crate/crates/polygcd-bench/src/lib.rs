//! Shared fixtures for the benchmarks.

use polygcd::IntPoly;

pub fn running_example() -> (IntPoly, IntPoly) {
    ("x^3-5x^2+10x-12".parse().unwrap(), "x^2+3".parse().unwrap())
}

pub fn pattern_example() -> (IntPoly, IntPoly) {
    (IntPoly::from_roots([5, 27]), "x^2+3x+9".parse().unwrap())
}

pub fn degree_six_pair() -> (IntPoly, IntPoly) {
    (
        "x^6-3x^5+7x^4-11x^3+13x^2-17x+19".parse().unwrap(),
        "x^6+2x^5-5x^4+8x^3-9x^2+4x-21".parse().unwrap(),
    )
}
