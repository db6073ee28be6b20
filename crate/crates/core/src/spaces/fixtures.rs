//! Recorded quantum products, kept apart from anything the engine computes.
//!
//! Factors and results are written in the classical names of the basis
//! classes. On the flag manifold `a = p1`, `b = p2`, `ab = a^2 + b^2` and
//! `ab^2 = a^2 b`; on the Hirzebruch surfaces `x2 = x4 - k*x1` and
//! `z = x1*x4`.

#[derive(Clone, Copy, Debug)]
pub struct ProductFixture {
    pub space: &'static str,
    pub name: &'static str,
    pub left: &'static str,
    pub right: &'static str,
    pub expected: &'static str,
}

const fn fx(
    space: &'static str,
    name: &'static str,
    left: &'static str,
    right: &'static str,
    expected: &'static str,
) -> ProductFixture {
    ProductFixture {
        space,
        name,
        left,
        right,
        expected,
    }
}

const FIXTURES: &[ProductFixture] = &[
    fx("flag3", "a*a", "p1", "p1", "p1^2 + q1"),
    fx("flag3", "b*b", "p2", "p2", "p2^2 + q2"),
    fx("flag3", "a*b", "p1", "p2", "p1^2 + p2^2"),
    fx("flag3", "a*b^2", "p1", "p2^2", "p1^2*p2"),
    fx("flag3", "a^2*b", "p1^2", "p2", "p1^2*p2"),
    fx("flag3", "a*a^2", "p1", "p1^2", "p2*q1"),
    fx("flag3", "b*b^2", "p2", "p2^2", "p1*q2"),
    fx("flag3", "a*a^2b", "p1", "p1^2*p2", "p2^2*q1 + q1*q2"),
    fx("flag3", "b*a^2b", "p2", "p1^2*p2", "p1^2*q2 + q1*q2"),
    fx("flag3", "a^2*a^2", "p1^2", "p1^2", "p2^2*q1"),
    fx("flag3", "b^2*b^2", "p2^2", "p2^2", "p1^2*q2"),
    fx("flag3", "a^2*b^2", "p1^2", "p2^2", "q1*q2"),
    fx("flag3", "a^2*a^2b", "p1^2", "p1^2*p2", "p1*q1*q2"),
    fx("flag3", "b^2*a^2b", "p2^2", "p1^2*p2", "p2*q1*q2"),
    fx("flag3", "a^2b*a^2b", "p1^2*p2", "p1^2*p2", "(p1^2 + p2^2)*q1*q2"),
    fx("hirzebruch:0", "x1*x1", "x1", "x1", "q2"),
    fx("hirzebruch:0", "x4*x4", "x4", "x4", "q1"),
    fx("hirzebruch:0", "x1*x4", "x1", "x4", "x1*x4"),
    fx("hirzebruch:1", "x1*x1", "x1", "x1", "(x4 - x1)*q2"),
    fx("hirzebruch:1", "x1*x4", "x1", "x4", "x1*x4"),
    fx("hirzebruch:1", "x2*x4", "x4 - x1", "x4", "q1"),
    fx("hirzebruch:1", "x4*x4", "x4", "x4", "x1*x4 + q1"),
    fx("hirzebruch:1", "x1*x2", "x1", "x4 - x1", "x1*x4 - (x4 - x1)*q2"),
    fx("hirzebruch:1", "x2*x2", "x4 - x1", "x4 - x1", "-x1*x4 + q1 + (x4 - x1)*q2"),
];

pub fn product_fixtures() -> &'static [ProductFixture] {
    FIXTURES
}
