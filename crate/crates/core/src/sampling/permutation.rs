use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use crate::counting::CycleType;
use crate::{Error, Result};

/// A bijection of `{0, ..., n-1}`; `image[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` is a bijection of `0..image.len()`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (i, &v) in image.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidPermutation(format!("image[{i}] = {v} is outside 0..{n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} appears twice")));
            }
        }
        Ok(Permutation { image })
    }

    /// Accepts the usual 1-based one-line notation, e.g. `[2, 1, 4, 5, 3]`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidPermutation("one-based images start at 1".into()));
        }
        Self::new(image.iter().map(|&v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    pub(crate) fn from_raw(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        cycle_lengths(&self.image)
    }

    pub fn fixed_points(&self) -> usize {
        self.image.iter().enumerate().filter(|(i, v)| i == *v).count()
    }
}

impl fmt::Display for Permutation {
    /// One-based one-line notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.image.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "({})", items.join(","))
    }
}

pub(crate) fn cycle_lengths(image: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; image.len()];
    let mut out = Vec::new();
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let (mut i, mut len) = (start, 0);
        while !seen[i] {
            seen[i] = true;
            i = image[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Fisher–Yates shuffle of the identity.
pub fn uniform_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        image.swap(i, j);
    }
    Permutation { image }
}

pub fn cycle_type_of(perm: &Permutation) -> CycleType {
    CycleType::from_lengths(perm.cycle_lengths()).expect("cycle lengths are positive")
}

/// Order (lcm of cycle lengths) and product of cycle lengths.
pub fn order_and_product(perm: &Permutation) -> (BigUint, BigUint) {
    perm.cycle_lengths().into_iter().fold((BigUint::one(), BigUint::one()), |(l, p), k| {
        let k = BigUint::from(k);
        (l.lcm(&k), p * k)
    })
}

/// `order == product` without big arithmetic: the cycle lengths are pairwise coprime.
pub(crate) fn lengths_pairwise_coprime(lengths: &[usize]) -> bool {
    let parts: Vec<usize> = lengths.iter().copied().filter(|&k| k > 1).collect();
    parts
        .iter()
        .enumerate()
        .all(|(i, a)| parts[i + 1..].iter().all(|b| a.gcd(b) == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![]).unwrap().is_empty());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert_eq!(Permutation::from_one_based(&[2, 1]).unwrap().image(), &[1, 0]);
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(cycle_type_of(&Permutation::identity(4)).to_string(), "{1:4}");
        let cyc = Permutation::new(vec![1, 2, 3, 4, 5, 0]).unwrap();
        assert_eq!(cycle_type_of(&cyc).to_string(), "{6:1}");
        let p = Permutation::from_one_based(&[2, 1, 4, 5, 3]).unwrap();
        assert_eq!(cycle_type_of(&p).to_string(), "{2:1, 3:1}");
        assert_eq!(p.to_string(), "(2,1,4,5,3)");
    }

    #[test]
    fn order_product_examples() {
        let one = BigUint::one();
        assert_eq!(order_and_product(&Permutation::identity(5)), (one.clone(), one));
        let p = Permutation::from_one_based(&[2, 1, 4, 5, 3]).unwrap();
        assert_eq!(order_and_product(&p), (BigUint::from(6u32), BigUint::from(6u32)));
        let p = Permutation::from_one_based(&[2, 1, 4, 3]).unwrap();
        assert_eq!(order_and_product(&p), (BigUint::from(2u32), BigUint::from(4u32)));
    }

    #[test]
    fn single_point_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert_eq!(uniform_permutation(1, &mut rng), Permutation::identity(1));
        }
        assert!(uniform_permutation(0, &mut rng).is_empty());
    }

    proptest! {
        #[test]
        fn shuffles_are_bijections(n in 0usize..200, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = uniform_permutation(n, &mut rng);
            prop_assert!(Permutation::new(p.image().to_vec()).is_ok());
            prop_assert_eq!(cycle_type_of(&p).n(), n);
        }

        #[test]
        fn coprime_shortcut_matches_big_arithmetic(n in 1usize..40, seed: u64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = uniform_permutation(n, &mut rng);
            let (order, product) = order_and_product(&p);
            prop_assert_eq!(order == product, lengths_pairwise_coprime(&p.cycle_lengths()));
        }
    }
}
