//! Worked-example data and a generator of random category O data.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arrangement::{validate, CategoryODatum};
use crate::linalg::Rational;

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

/// One hyperplane in a line, trivial `g`.
pub fn ex0() -> CategoryODatum {
    CategoryODatum::new(1, vec![], q(&[0]), q(&[1])).expect("fixture")
}

/// The cotangent bundle of the projective line.
pub fn ex1() -> CategoryODatum {
    CategoryODatum::new(2, vec![vec![1, 1]], q(&[1, 0]), q(&[0, -1])).expect("fixture")
}

/// Plumbing of two cotangent bundles of the projective line.
pub fn ex2() -> CategoryODatum {
    CategoryODatum::new(3, vec![vec![1, -1, 0], vec![0, 1, -1]], q(&[0, -1, -2]), q(&[1, 0, 0])).expect("fixture")
}

pub fn fixtures() -> Vec<(&'static str, CategoryODatum)> {
    vec![("EX0", ex0()), ("EX1", ex1()), ("EX2", ex2())]
}

/// Samples a random validated datum with `n` in `n_min..=n_max`.
///
/// The lattice `g` is spanned by random rows with entries in {-1, 0, 1}; `t` and
/// `m` are random small rationals. Candidates are rejected until validation passes.
pub fn random_datum<R: Rng>(rng: &mut R, n_min: usize, n_max: usize) -> CategoryODatum {
    loop {
        let n = rng.gen_range(n_min..=n_max);
        let k = rng.gen_range(0..=n);
        let g: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect()).collect();
        let mut denoms = [1i64, 2, 3];
        denoms.shuffle(rng);
        let rat = |rng: &mut R| Rational::new(rng.gen_range(-9i64..=9), denoms[0]);
        let t: Vec<Rational> = (0..n).map(|_| rat(rng)).collect();
        let m: Vec<Rational> = (0..n).map(|_| Rational::from(rng.gen_range(-5i64..=5))).collect();
        let Ok(d) = CategoryODatum::new(n, g, t, m) else { continue };
        if validate(&d).is_category_o_datum() {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_data_are_valid_and_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let x = random_datum(&mut a, 1, 5);
            let y = random_datum(&mut b, 1, 5);
            assert_eq!(x, y);
            assert!(validate(&x).is_category_o_datum());
        }
    }
}
