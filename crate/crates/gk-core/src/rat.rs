//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::prelude::*;

/// Arbitrary-precision rational number used for all coefficients.
pub type Rat = Ratio<BigInt>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

/// Renders `p/q` with the denominator omitted when it is one.
pub fn display(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sign of a permutation given as the image sequence of `0..len`.
///
/// Counts transpositions by cycle decomposition, so the input must be a
/// bijection onto `0..len`.
pub fn perm_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i32;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of the permutation sorting `vals` increasingly.
///
/// `vals` must have pairwise distinct entries.
pub fn sort_sign<T: Ord + Clone>(vals: &[T]) -> i32 {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| vals[a].cmp(&vals[b]));
    // idx[k] = which input lands at sorted position k; invert for image form.
    let mut perm = vec![0usize; vals.len()];
    for (pos, &i) in idx.iter().enumerate() {
        perm[i] = pos;
    }
    perm_sign(&perm)
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_signs() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[1, 2, 0]), 1);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(sort_sign(&[2, 1]), -1);
        assert_eq!(sort_sign::<u32>(&[]), 1);
    }

    #[test]
    fn rational_display() {
        assert_eq!(display(&rat(-3)), "-3");
        assert_eq!(display(&rat_frac(1, 12)), "1/12");
    }
}
