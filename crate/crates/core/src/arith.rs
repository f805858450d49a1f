//! Small integer helpers shared by the prong and datum arithmetic.

use num_integer::Integer;

/// Greatest common divisor of a sequence, with `0` acting as the neutral element.
pub fn gcd_all<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    values.into_iter().fold(0, |acc, x| acc.gcd(&x))
}

/// Least common multiple of two positive integers.
pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|r| n.is_multiple_of(*r)).collect()
}

/// Reduces a possibly negative integer into `0..modulus`.
pub fn reduce(x: i64, modulus: u32) -> u32 {
    x.rem_euclid(i64::from(modulus)) as u32
}
