//! Child seeds derived from a root seed by stable hashing of
//! `(root, component, instance)`, so any run can be replayed piecewise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0100_0000_01b3;

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(root: u64, component: &str, instance: u64) -> u64 {
    splitmix64(splitmix64(root ^ fnv1a(component.as_bytes())) ^ instance)
}

pub fn rng_for(root: u64, component: &str, instance: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(root, component, instance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fnv1a(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn splitmix_reference_value() {
        // first output of the reference generator seeded with 0
        assert_eq!(splitmix64(0), 0xe220a8397b1dcdaf);
    }

    #[test]
    fn derivation_separates_inputs() {
        let a = derive_seed(7, "partition", 0);
        assert_eq!(a, derive_seed(7, "partition", 0));
        assert_ne!(a, derive_seed(7, "partition", 1));
        assert_ne!(a, derive_seed(7, "embed", 0));
        assert_ne!(a, derive_seed(8, "partition", 0));
    }
}
