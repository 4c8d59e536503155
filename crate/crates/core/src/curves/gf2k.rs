//! Arithmetic in `F_{2^k}` for 1 ≤ k ≤ 16 via exp/log tables.
//!
//! Each field is built from a fixed primitive polynomial, so `x` generates
//! the multiplicative group and multiplication reduces to index arithmetic
//! modulo `2^k − 1`. Table construction asserts that the generator has full
//! period, so a non-primitive polynomial in the table below cannot slip
//! through silently.

/// Primitive polynomials over F_2, indexed by degree (bit `k` is `x^k`).
/// Degree 0 entry is a placeholder.
const PRIMITIVE_POLYS: [u32; 17] = [
    0,
    0b11,                // x + 1
    0b111,               // x^2 + x + 1
    0b1011,              // x^3 + x + 1
    0b1_0011,            // x^4 + x + 1
    0b10_0101,           // x^5 + x^2 + 1
    0b100_0011,          // x^6 + x + 1
    0b1000_0011,         // x^7 + x + 1
    0b1_0001_1101,       // x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,      // x^9 + x^4 + 1
    0b100_0000_1001,     // x^10 + x^3 + 1
    0b1000_0000_0101,    // x^11 + x^2 + 1
    0b1_0000_0101_0011,  // x^12 + x^6 + x^4 + x + 1
    0b10_0000_0001_1011, // x^13 + x^4 + x^3 + x + 1
    0b100_0100_0100_0011, // x^14 + x^10 + x^6 + x + 1
    0b1000_0000_0000_0011, // x^15 + x + 1
    0b1_0001_0000_0000_1011, // x^16 + x^12 + x^3 + x + 1
];

/// A binary field `F_{2^k}`. Elements are bit patterns below `2^k`.
pub struct Gf2k {
    k: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf2k {
    /// Builds the field tables. Panics if `k` is outside 1..=16.
    pub fn new(k: u32) -> Gf2k {
        assert!((1..=16).contains(&k), "supported fields are F_2 .. F_2^16");
        let poly = PRIMITIVE_POLYS[k as usize];
        let size = 1u32 << k;
        let order = size - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut value = 1u32;
        for i in 0..order {
            assert!(
                log[value as usize] == u32::MAX,
                "polynomial of degree {k} is not primitive"
            );
            exp[i as usize] = value;
            log[value as usize] = i;
            value <<= 1;
            if value & size != 0 {
                value ^= poly;
            }
        }
        assert_eq!(value, 1, "generator does not have full period 2^{k} - 1");
        Gf2k { k, order, exp, log }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        1u64 << self.k
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            let idx = (self.log[a as usize] + self.log[b as usize]) % self.order;
            self.exp[idx as usize]
        }
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            1
        } else if a == 0 {
            0
        } else {
            let idx = (self.log[a as usize] as u64 * e as u64) % self.order as u64;
            self.exp[idx as usize]
        }
    }

    /// All field elements, 0 first.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        0..(1u32 << self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_supported_field_builds() {
        for k in 1..=16 {
            let f = Gf2k::new(k);
            assert_eq!(f.size(), 1u64 << k);
        }
    }

    #[test]
    fn f8_multiplication_table_spots() {
        let f = Gf2k::new(3);
        // x · x = x^2, x^3 = x + 1 under x^3 + x + 1.
        assert_eq!(f.mul(0b010, 0b010), 0b100);
        assert_eq!(f.mul(0b100, 0b010), 0b011);
    }

    #[test]
    fn field_axioms_on_samples() {
        let f = Gf2k::new(6);
        let xs: Vec<u32> = (0..f.size() as u32).collect();
        for &a in &xs {
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
            for &b in xs.iter().step_by(7) {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in xs.iter().step_by(13) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        let f = Gf2k::new(5);
        let fixed: Vec<u32> = f.elements().filter(|&a| f.mul(a, a) == a).collect();
        assert_eq!(fixed, vec![0, 1]);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = Gf2k::new(4);
        for a in f.elements() {
            let mut acc = 1u32;
            for e in 0..10 {
                assert_eq!(f.pow(a, e), acc);
                acc = f.mul(acc, a);
            }
        }
    }
}
