use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::setsys::{close_sets, family::check_ground_size, Family, SubsetMask};

fn generator(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `k` independent uniform draws from `2^[n]` on stream `stream` of `seed`.
pub fn random_subsets_stream(n: usize, k: usize, seed: u64, stream: u64) -> Result<Vec<SubsetMask>> {
    check_ground_size(n)?;
    let mut rng = generator(seed, stream);
    let full = SubsetMask::full(n).bits();
    Ok((0..k).map(|_| SubsetMask(rng.gen::<u32>() & full)).collect())
}

pub fn random_subsets(n: usize, k: usize, seed: u64) -> Result<Vec<SubsetMask>> {
    random_subsets_stream(n, k, seed, 0)
}

/// Intersection closure of `k` uniform random subsets; a pure function of
/// `(n, k, seed)`.
pub fn random_closed(n: usize, k: usize, seed: u64) -> Result<Family> {
    random_closed_stream(n, k, seed, 0)
}

/// As [`random_closed`], drawing from an independent stream of `seed`.
/// Mining uses the sample index as the stream.
pub fn random_closed_stream(n: usize, k: usize, seed: u64, stream: u64) -> Result<Family> {
    Ok(close_sets(n, random_subsets_stream(n, k, seed, stream)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setsys::{intersection_closure, RawFamily};

    #[test]
    fn zero_generators_give_the_empty_family() {
        assert!(random_closed(4, 0, 9).unwrap().is_empty());
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_closed(5, 6, 42).unwrap(), random_closed(5, 6, 42).unwrap());
        assert_ne!(
            random_subsets_stream(8, 6, 42, 0).unwrap(),
            random_subsets_stream(8, 6, 42, 1).unwrap()
        );
    }

    #[test]
    fn closure_of_known_draws() {
        let want = [SubsetMask::from_elements([1, 2]), SubsetMask::from_elements([2, 3])];
        let seed = (0u64..100_000)
            .find(|&s| random_subsets(3, 2, s).unwrap() == want)
            .expect("some seed draws {1,2},{2,3}");
        let f = random_closed(3, 2, seed).unwrap();
        let expect = [SubsetMask::from_elements([2]), want[0], want[1]];
        assert_eq!(f.sets(), &expect);
    }

    #[test]
    fn matches_closure_of_draws() {
        for seed in 0..50 {
            let draws = random_subsets(10, 7, seed).unwrap();
            let mut uniq = draws.clone();
            uniq.sort();
            uniq.dedup();
            let expect = intersection_closure(&RawFamily::new(10, uniq).unwrap()).unwrap();
            assert_eq!(random_closed(10, 7, seed).unwrap(), expect);
        }
    }

    #[test]
    fn ground_set_range() {
        assert!(random_closed(0, 1, 1).is_err());
        assert!(random_closed(25, 1, 1).is_err());
        let f = random_closed(24, 5, 3).unwrap();
        assert!(f.iter().all(|s| s.fits(24)));
    }
}
