//! Polynomials over GF(2), LFSR state arithmetic and sequence utilities.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bits::{BitMatrix, BitSeq, BitVector};
use crate::error::{Error, FormatError, Result};

/// A polynomial over GF(2); bit `i` of the limb vector is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinPoly {
    limbs: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        BinPoly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    pub fn x() -> Self {
        Self::from_u64(2)
    }

    pub fn monomial(k: usize) -> Self {
        let mut p = Self::zero();
        p.toggle(k);
        p
    }

    pub fn from_u64(v: u64) -> Self {
        let mut p = BinPoly { limbs: vec![v] };
        p.normalize();
        p
    }

    /// Sum of `x^e` over the given exponents (repeated exponents cancel).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.toggle(e);
        }
        p
    }

    /// `x^n + x^k + 1`.
    pub fn trinomial(n: usize, k: usize) -> Self {
        Self::from_exponents([n, k, 0])
    }

    /// Polynomial with coefficients `c_0..c_{len-1}` taken from a bit vector.
    pub fn from_coeffs(v: &BitVector) -> Self {
        Self::from_exponents(v.ones())
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn toggle(&mut self, i: usize) {
        if self.limbs.len() <= i / 64 {
            self.limbs.resize(i / 64 + 1, 0);
        }
        self.limbs[i / 64] ^= 1 << (i % 64);
        self.normalize();
    }

    /// Exponents with coefficient 1, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &limb) in self.limbs.iter().enumerate() {
            let mut l = limb;
            while l != 0 {
                let b = l.trailing_zeros() as usize;
                out.push(w * 64 + b);
                l &= l - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coefficients `c_0..c_{n-1}` below the degree `n`.
    pub fn low_coeffs(&self) -> BitVector {
        let n = self.deg();
        BitVector::from_bools((0..n).map(|i| self.coeff(i)))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn add(&self, other: &BinPoly) -> BinPoly {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut limbs = long.limbs.clone();
        for (a, b) in limbs.iter_mut().zip(&short.limbs) {
            *a ^= *b;
        }
        let mut p = BinPoly { limbs };
        p.normalize();
        p
    }

    pub fn shl(&self, k: usize) -> BinPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut limbs = vec![0u64; words];
        limbs.reserve(self.limbs.len() + 1);
        let mut carry = 0u64;
        for &w in &self.limbs {
            if bits == 0 {
                limbs.push(w);
            } else {
                limbs.push((w << bits) | carry);
                carry = w >> (64 - bits);
            }
        }
        if carry != 0 {
            limbs.push(carry);
        }
        let mut p = BinPoly { limbs };
        p.normalize();
        p
    }

    pub fn mul(&self, other: &BinPoly) -> BinPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            let mut a = a;
            while a != 0 {
                let b = a.trailing_zeros() as usize;
                a &= a - 1;
                // add other << (64 i + b)
                let mut carry = 0u64;
                for (j, &w) in other.limbs.iter().enumerate() {
                    if b == 0 {
                        limbs[i + j] ^= w;
                    } else {
                        limbs[i + j] ^= (w << b) | carry;
                        carry = w >> (64 - b);
                    }
                }
                if carry != 0 {
                    limbs[i + other.limbs.len()] ^= carry;
                }
            }
        }
        let mut p = BinPoly { limbs };
        p.normalize();
        p
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, m: &BinPoly) -> (BinPoly, BinPoly) {
        let dm = m.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        let mut q = BinPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            let s = dr - dm;
            q.toggle(s);
            r = r.add(&m.shl(s));
        }
        (q, r)
    }

    pub fn rem(&self, m: &BinPoly) -> BinPoly {
        self.div_rem(m).1
    }

    pub fn gcd(&self, other: &BinPoly) -> BinPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// `x^deg · p(1/x)`.
    pub fn reciprocal(&self) -> BinPoly {
        let d = self.deg();
        BinPoly::from_exponents(self.exponents().into_iter().map(|e| d - e))
    }

    /// Set notation `n=<deg>;{e1,e2,...}` listing the middle exponents in
    /// decreasing order; the leading and constant terms are implicit.
    /// Returns `None` when the constant term is zero or the degree is 0.
    pub fn to_set_notation(&self) -> Option<String> {
        let n = self.degree()?;
        if n == 0 || !self.coeff(0) {
            return None;
        }
        let mid: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .filter(|&e| e != 0 && e != n)
            .map(|e| e.to_string())
            .collect();
        Some(format!("n={n};{{{}}}", mid.join(",")))
    }

    /// Hex of the coefficient vector, highest power first, with a `0x` prefix.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = String::from("0x");
        let top = self.limbs.len() - 1;
        s.push_str(&format!("{:x}", self.limbs[top]));
        for i in (0..top).rev() {
            s.push_str(&format!("{:016x}", self.limbs[i]));
        }
        s
    }

    /// Algebraic rendering such as `x^4 + x + 1`.
    pub fn to_algebraic(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Canonical text: set notation when available, hex otherwise.
    pub fn to_text(&self) -> String {
        self.to_set_notation().unwrap_or_else(|| self.to_hex())
    }

    /// Parses set notation (`n=130;{3}`), hex (`0x13`) or algebraic
    /// (`x^4+x+1`) input.
    pub fn parse(s: &str) -> std::result::Result<BinPoly, FormatError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("n=") {
            let (n, set) = rest
                .split_once(';')
                .ok_or_else(|| FormatError::new("set notation needs ';' after the degree"))?;
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| FormatError::new(format!("bad degree {n:?}")))?;
            if n == 0 {
                return Err(FormatError::new("degree must be positive"));
            }
            let inner = set
                .trim()
                .strip_prefix('{')
                .and_then(|x| x.strip_suffix('}'))
                .ok_or_else(|| FormatError::new("exponent set must be enclosed in braces"))?;
            let mut p = BinPoly::from_exponents([n, 0]);
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let e: usize = tok
                    .parse()
                    .map_err(|_| FormatError::new(format!("bad exponent {tok:?}")))?;
                if e == 0 || e >= n || p.coeff(e) {
                    return Err(FormatError::new(format!("exponent {e} out of range or repeated")));
                }
                p.toggle(e);
            }
            return Ok(p);
        }
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            let mut p = BinPoly::zero();
            let digits: Vec<char> = hex.chars().collect();
            if digits.is_empty() {
                return Err(FormatError::new("empty hex polynomial"));
            }
            for (i, c) in digits.iter().rev().enumerate() {
                let d = c
                    .to_digit(16)
                    .ok_or_else(|| FormatError::new(format!("bad hex digit {c:?}")))?;
                for b in 0..4 {
                    if (d >> b) & 1 == 1 {
                        p.toggle(4 * i + b);
                    }
                }
            }
            return Ok(p);
        }
        let mut p = BinPoly::zero();
        for term in s.split('+').map(str::trim) {
            let e = match term {
                "1" => 0,
                "0" => continue,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| FormatError::new(format!("bad polynomial term {t:?}")))?,
            };
            p.toggle(e);
        }
        Ok(p)
    }
}

impl FromStr for BinPoly {
    type Err = FormatError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        BinPoly::parse(s)
    }
}

impl Ord for BinPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BinPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_algebraic())
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({})", self.to_algebraic())
    }
}

fn check_modulus(m: &BinPoly) -> Result<()> {
    match m.degree() {
        Some(d) if d >= 1 => Ok(()),
        _ => Err(Error::InvalidModulus),
    }
}

/// `a · b mod m`.
pub fn poly_mul_mod(a: &BinPoly, b: &BinPoly, m: &BinPoly) -> Result<BinPoly> {
    check_modulus(m)?;
    Ok(a.rem(m).mul(&b.rem(m)).rem(m))
}

/// `base^e mod m` by square-and-multiply.
pub fn poly_pow_mod(base: &BinPoly, e: &BigUint, m: &BinPoly) -> Result<BinPoly> {
    check_modulus(m)?;
    let base = base.rem(m);
    let mut acc = BinPoly::one().rem(m);
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m);
        if e.bit(i) {
            acc = acc.mul(&base).rem(m);
        }
    }
    Ok(acc)
}

/// The companion matrix `A_f`: ones on the subdiagonal, last column
/// `(c_0, ..., c_{n-1})`, so that `s · A_f = (s_1, ..., s_{n-1}, Σ c_i s_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    matrix: BitMatrix,
}

impl CompanionMatrix {
    pub fn new(f: &BinPoly) -> Result<Self> {
        check_modulus(f)?;
        let n = f.deg();
        let mut m = BitMatrix::zeros(n);
        for i in 1..n {
            m.set(i, i - 1, true);
        }
        for i in 0..n {
            if f.coeff(i) {
                m.set(i, n - 1, true);
            }
        }
        Ok(CompanionMatrix { matrix: m })
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// `v · A^e` through repeated squaring of the matrix.
    pub fn apply_pow(&self, v: &BitVector, e: &BigUint) -> BitVector {
        self.matrix.pow(e).apply(v)
    }
}

/// One LFSR step: `(s_0..s_{n-1}) -> (s_1..s_{n-1}, Σ c_i s_i)`.
pub fn lfsr_step(p: &BinPoly, v: &BitVector) -> BitVector {
    let n = v.len();
    let fb = v.ones().fold(false, |acc, i| acc ^ p.coeff(i));
    let mut out = BitVector::from_bools(v.iter().skip(1));
    debug_assert_eq!(out.len(), n - 1);
    out.push(fb);
    out
}

/// The first `len` terms of the LFSR sequence of `p` started from `v`.
pub fn lfsr_sequence(p: &BinPoly, v: &BitVector, len: usize) -> BitVector {
    let n = p.deg();
    assert_eq!(v.len(), n);
    let mut out = v.clone();
    while out.len() < len {
        let k = out.len() - n;
        let fb = (0..n).fold(false, |acc, i| acc ^ (p.coeff(i) & out.get(k + i)));
        out.push(fb);
    }
    BitVector::from_bools(out.iter().take(len))
}

/// The state `v · A_p^e`.
///
/// With `r(x) = x^e mod p`, the state at step `e` is `Σ r_j · state_j`, so one
/// polynomial exponentiation plus `2n - 1` sequence terms suffice.
pub fn lfsr_state_at(p: &BinPoly, v: &BitVector, e: &BigUint) -> Result<BitVector> {
    check_modulus(p)?;
    let n = p.deg();
    if v.len() != n {
        return Err(Error::Domain(format!(
            "state length {} differs from degree {n}",
            v.len()
        )));
    }
    let r = poly_pow_mod(&BinPoly::x(), e, p)?;
    let s = lfsr_sequence(p, v, 2 * n - 1);
    Ok(BitVector::from_bools((0..n).map(|i| {
        r.exponents().into_iter().fold(false, |acc, j| acc ^ s.get(j + i))
    })))
}

/// Ben-Or irreducibility test: no factor of degree `i ≤ n/2`, i.e.
/// `gcd(x^{2^i} - x, f) = 1` for every such `i`.
pub fn is_irreducible(f: &BinPoly) -> bool {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    if !f.coeff(0) {
        return false;
    }
    let x = BinPoly::x();
    let mut u = x.clone();
    for _ in 1..=n / 2 {
        u = u.mul(&u).rem(f);
        if !u.add(&x).gcd(f).is_one() {
            return false;
        }
    }
    true
}

/// Primitivity given the distinct prime factors of `2^n - 1`.
pub fn is_primitive(f: &BinPoly, factors: &[BigUint]) -> Result<bool> {
    if !is_irreducible(f) {
        return Ok(false);
    }
    let n = f.deg();
    let m: BigUint = (BigUint::one() << n) - 1u32;
    let mut rest = m.clone();
    for q in factors {
        if q <= &BigUint::one() || !(&m % q).is_zero() {
            return Err(Error::Domain(format!("{q} is not a prime factor of 2^{n}-1")));
        }
        while (&rest % q).is_zero() {
            rest /= q;
        }
    }
    if !rest.is_one() {
        return Err(Error::Domain(format!("factor list of 2^{n}-1 is incomplete")));
    }
    let x = BinPoly::x();
    if !poly_pow_mod(&x, &m, f)?.is_one() {
        return Ok(false);
    }
    for q in factors {
        if poly_pow_mod(&x, &(&m / q), f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Primitivity using the bundled factorizations of `2^n - 1` (`n ≤ 64`).
pub fn is_primitive_bundled(f: &BinPoly) -> Result<bool> {
    let n = f.deg();
    let factors = mersenne_factors(n).ok_or(Error::UnsupportedDegree(n))?;
    is_primitive(f, &factors)
}

/// Distinct prime factors of `2^n - 1` for `1 ≤ n ≤ 64`.
pub fn mersenne_factors(n: usize) -> Option<Vec<BigUint>> {
    if n == 0 {
        return None;
    }
    MERSENNE_FACTORS
        .get(n - 1)
        .map(|fs| fs.iter().map(|&q| BigUint::from(q)).collect())
}

const MERSENNE_FACTORS: [&[u64]; 64] = [
    &[],
    &[3],
    &[7],
    &[3, 5],
    &[31],
    &[3, 7],
    &[127],
    &[3, 5, 17],
    &[7, 73],
    &[3, 11, 31],
    &[23, 89],
    &[3, 5, 7, 13],
    &[8191],
    &[3, 43, 127],
    &[7, 31, 151],
    &[3, 5, 17, 257],
    &[131071],
    &[3, 7, 19, 73],
    &[524287],
    &[3, 5, 11, 31, 41],
    &[7, 127, 337],
    &[3, 23, 89, 683],
    &[47, 178481],
    &[3, 5, 7, 13, 17, 241],
    &[31, 601, 1801],
    &[3, 2731, 8191],
    &[7, 73, 262657],
    &[3, 5, 29, 43, 113, 127],
    &[233, 1103, 2089],
    &[3, 7, 11, 31, 151, 331],
    &[2147483647],
    &[3, 5, 17, 257, 65537],
    &[7, 23, 89, 599479],
    &[3, 43691, 131071],
    &[31, 71, 127, 122921],
    &[3, 5, 7, 13, 19, 37, 73, 109],
    &[223, 616318177],
    &[3, 174763, 524287],
    &[7, 79, 8191, 121369],
    &[3, 5, 11, 17, 31, 41, 61681],
    &[13367, 164511353],
    &[3, 7, 43, 127, 337, 5419],
    &[431, 9719, 2099863],
    &[3, 5, 23, 89, 397, 683, 2113],
    &[7, 31, 73, 151, 631, 23311],
    &[3, 47, 178481, 2796203],
    &[2351, 4513, 13264529],
    &[3, 5, 7, 13, 17, 97, 241, 257, 673],
    &[127, 4432676798593],
    &[3, 11, 31, 251, 601, 1801, 4051],
    &[7, 103, 2143, 11119, 131071],
    &[3, 5, 53, 157, 1613, 2731, 8191],
    &[6361, 69431, 20394401],
    &[3, 7, 19, 73, 87211, 262657],
    &[23, 31, 89, 881, 3191, 201961],
    &[3, 5, 17, 29, 43, 113, 127, 15790321],
    &[7, 32377, 524287, 1212847],
    &[3, 59, 233, 1103, 2089, 3033169],
    &[179951, 3203431780337],
    &[3, 5, 7, 11, 13, 31, 41, 61, 151, 331, 1321],
    &[2305843009213693951],
    &[3, 715827883, 2147483647],
    &[7, 73, 127, 337, 92737, 649657],
    &[3, 5, 17, 257, 641, 65537, 6700417],
];

/// Minimal polynomial of a binary sequence (characteristic form, monic of
/// degree equal to the linear complexity).
pub fn berlekamp_massey(bits: &BitVector) -> BinPoly {
    let len = bits.len();
    let mut c = BinPoly::one();
    let mut b = BinPoly::one();
    let mut l = 0usize;
    let mut m = 1usize;
    for i in 0..len {
        let mut d = bits.get(i);
        for j in 1..=l {
            d ^= c.coeff(j) & bits.get(i - j);
        }
        if !d {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            c = c.add(&b.shl(m));
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            c = c.add(&b.shl(m));
            m += 1;
        }
    }
    // connection polynomial C(x) of length l -> characteristic x^l C(1/x)
    BinPoly::from_exponents(c.exponents().into_iter().filter(|&e| e <= l).map(|e| l - e))
}

/// `(L^shift s)^{(d)}`: every `d`-th term starting at `shift`, one period.
pub fn decimate(s: &BitSeq, d: usize, shift: usize) -> BitSeq {
    assert!(d >= 1, "decimation factor must be positive");
    let n = s.period();
    let period = n / d.gcd(&n);
    BitSeq::new(BitVector::from_bools((0..period).map(|i| s.get(shift + i * d))))
}

/// One period of the m-sequence of `p` starting from `(1, 0, ..., 0)`.
pub fn m_sequence(p: &BinPoly) -> BitSeq {
    let n = p.deg();
    assert!(n < 40, "m-sequence too long to materialize");
    BitSeq::new(lfsr_sequence(p, &BitVector::unit(n), (1usize << n) - 1))
}

/// Result of decimating the m-sequence of a primitive `p` by `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPoly {
    pub f: BinPoly,
    pub degree: usize,
    /// True when `deg f = deg p`.
    pub valid: bool,
}

/// Minimal polynomial of `α^t`, obtained from `2n` terms of the
/// `t`-decimated m-sequence fed to Berlekamp-Massey.
pub fn associated_irreducible(p: &BinPoly, t: &BigUint) -> Result<AssociatedPoly> {
    check_modulus(p)?;
    let n = p.deg();
    let s = lfsr_sequence(p, &BitVector::unit(n), 2 * n - 1);
    let step = poly_pow_mod(&BinPoly::x(), t, p)?;
    let mut r = BinPoly::one();
    let mut bits = BitVector::zeros(0);
    for _ in 0..2 * n {
        bits.push(r.exponents().into_iter().fold(false, |acc, j| acc ^ s.get(j)));
        r = r.mul(&step).rem(p);
    }
    let f = berlekamp_massey(&bits);
    let degree = f.deg();
    Ok(AssociatedPoly {
        f,
        degree,
        valid: degree == n,
    })
}

/// Inserts a 0 at the start of the unique longest cyclic run of zeros.
pub fn insert_zero(s: &BitSeq) -> Result<BitSeq> {
    let (pos, _) = longest_zero_run(s)?;
    let mut out = BitVector::zeros(0);
    for i in 0..s.period() {
        if i == pos {
            out.push(false);
        }
        out.push(s.get(i));
    }
    Ok(BitSeq::new(out))
}

/// Removes one 0 from the unique longest cyclic run of zeros.
pub fn remove_zero(s: &BitSeq) -> Result<BitSeq> {
    let (pos, _) = longest_zero_run(s)?;
    let bits = BitVector::from_bools((0..s.period()).filter(|&i| i != pos).map(|i| s.get(i)));
    if bits.is_empty() {
        return Err(Error::Domain("sequence too short".into()));
    }
    Ok(BitSeq::new(bits))
}

/// Start index and length of the unique longest cyclic zero run.
fn longest_zero_run(s: &BitSeq) -> Result<(usize, usize)> {
    let n = s.period();
    let Some(one) = (0..n).find(|&i| s.get(i)) else {
        return Err(Error::Domain("sequence has no nonzero term".into()));
    };
    let mut best: Option<(usize, usize)> = None;
    let mut ties = 0;
    let mut i = one + 1;
    let end = one + n;
    while i < end {
        if s.get(i) {
            i += 1;
            continue;
        }
        let start = i;
        while i < end && !s.get(i) {
            i += 1;
        }
        let len = i - start;
        match best {
            Some((_, bl)) if bl > len => {}
            Some((_, bl)) if bl == len => ties += 1,
            _ => {
                best = Some((start % n, len));
                ties = 0;
            }
        }
    }
    match best {
        None => Err(Error::Domain("sequence has no zero run".into())),
        Some(_) if ties > 0 => Err(Error::AmbiguousZeroRun),
        Some(b) => Ok(b),
    }
}
