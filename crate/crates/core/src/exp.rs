//! Exponent arithmetic modulo `2^n - 1` and cyclotomic cosets of 2.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exponents of a primitive element, reduced modulo `2^n - 1`.
pub type ExpInt = BigUint;

/// The ring `Z / (2^n - 1)` with doubling as `n`-bit rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpRing {
    n: usize,
    modulus: BigUint,
}

/// A cyclotomic coset of 2 modulo `2^n - 1`, given by its least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coset {
    pub leader: ExpInt,
    pub size: usize,
}

impl ExpRing {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        ExpRing {
            n,
            modulus: (BigUint::one() << n) - 1u32,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n - 1`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// The modulus as `u64`, when it fits.
    pub fn modulus_u64(&self) -> Option<u64> {
        self.modulus.to_u64()
    }

    pub fn reduce(&self, k: &BigUint) -> ExpInt {
        k % &self.modulus
    }

    pub fn from_i64(&self, k: i64) -> ExpInt {
        let m = &self.modulus;
        if k >= 0 {
            BigUint::from(k as u64) % m
        } else {
            let r = BigUint::from(k.unsigned_abs()) % m;
            if r.is_zero() {
                r
            } else {
                m - r
            }
        }
    }

    pub fn add(&self, a: &ExpInt, b: &ExpInt) -> ExpInt {
        (a + b) % &self.modulus
    }

    pub fn sub(&self, a: &ExpInt, b: &ExpInt) -> ExpInt {
        let a = a % &self.modulus;
        let b = b % &self.modulus;
        if a >= b {
            a - b
        } else {
            a + &self.modulus - b
        }
    }

    pub fn neg(&self, a: &ExpInt) -> ExpInt {
        self.sub(&BigUint::zero(), a)
    }

    pub fn mul(&self, a: &ExpInt, b: &ExpInt) -> ExpInt {
        (a * b) % &self.modulus
    }

    /// `k · 2^s mod (2^n - 1)`, a left rotation of the `n`-bit word `k`.
    pub fn rotl(&self, k: &ExpInt, s: usize) -> ExpInt {
        let k = k % &self.modulus;
        let s = s % self.n;
        if s == 0 {
            return k;
        }
        ((&k << s) & &self.modulus) | (k >> (self.n - s))
    }

    pub fn double(&self, k: &ExpInt) -> ExpInt {
        self.rotl(k, 1)
    }

    /// Least element and size of the doubling orbit of `k`.
    pub fn coset(&self, k: &ExpInt) -> Coset {
        let (leader, _, size) = self.coset_with_shift(k);
        Coset { leader, size }
    }

    /// `(leader, s, size)` with `k = 2^s · leader`.
    pub fn coset_with_shift(&self, k: &ExpInt) -> (ExpInt, usize, usize) {
        let k = self.reduce(k);
        let mut best = k.clone();
        let mut best_s = 0usize; // leader = rotl(k, best_s)
        let mut cur = k.clone();
        let mut size = self.n;
        for s in 1..=self.n {
            cur = self.rotl(&cur, 1);
            if cur == k {
                size = s;
                break;
            }
            if cur < best {
                best = cur.clone();
                best_s = s;
            }
        }
        // k = rotl(leader, size - best_s)
        let shift = (size - best_s) % size;
        (best, shift, size)
    }

    /// All elements of the coset of `k`, starting from `k` and doubling.
    pub fn coset_elements(&self, k: &ExpInt) -> Vec<ExpInt> {
        let k = self.reduce(k);
        let mut out = vec![k.clone()];
        let mut cur = self.rotl(&k, 1);
        while cur != k {
            out.push(cur.clone());
            cur = self.rotl(&cur, 1);
        }
        out
    }
}

/// Coset leader and coset size of `k` modulo `2^n - 1`.
pub fn coset_leader(k: &ExpInt, n: usize) -> (ExpInt, usize) {
    let c = ExpRing::new(n).coset(k);
    (c.leader, c.size)
}

/// Fast `u64` variant of [`ExpRing::rotl`] for `n < 64`.
#[inline]
pub fn rotl_u64(k: u64, s: u32, n: u32) -> u64 {
    let s = s % n;
    if s == 0 {
        return k;
    }
    let mask = (1u64 << n) - 1;
    ((k << s) & mask) | (k >> (n - s))
}

/// Least rotation of the `n`-bit word `k` together with the orbit size.
#[inline]
pub fn coset_leader_u64(k: u64, n: u32) -> (u64, u32) {
    let mut best = k;
    let mut cur = k;
    for s in 1..=n {
        cur = rotl_u64(cur, 1, n);
        if cur == k {
            return (best, s);
        }
        best = best.min(cur);
    }
    (best, n)
}
