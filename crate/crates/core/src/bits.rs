//! Packed bit containers: fixed-length vectors (LFSR states), periodic
//! sequences and square bit matrices over GF(2).

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::FormatError;

/// A fixed-length vector over GF(2), packed 64 bits per word.
///
/// Coordinate `i` is stored in bit `i % 64` of word `i / 64`. Unused high
/// bits of the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// The unit vector `(1, 0, ..., 0)`.
    pub fn unit(len: usize) -> Self {
        Self::basis(len, 0)
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut v = BitVector {
            words: Vec::new(),
            len: 0,
        };
        for b in bits {
            v.push(b);
        }
        v
    }

    /// Builds a vector from 0/1 integers, e.g. `&[1, 0, 0, 0]`.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b & 1 == 1))
    }

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    pub fn from_bit_str(s: &str) -> Result<Self, FormatError> {
        let mut v = BitVector::zeros(0);
        for c in s.chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                c if c.is_whitespace() => {}
                c => return Err(FormatError::new(format!("unexpected character {c:?} in bit string"))),
            }
        }
        Ok(v)
    }

    /// Packs the low `len` bits of `value` (bit `i` of `value` is coordinate `i`).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
            v.words[0] = value & mask;
        }
        v
    }

    /// Inverse of [`BitVector::from_u64`]. Panics when `len > 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64, "vector too long for u64 packing");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn push(&mut self, b: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        self.len += 1;
        if b {
            let i = self.len - 1;
            self.words[i / 64] |= 1u64 << (i % 64);
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Coordinates `1..len` as a new vector (the "tail" of a state).
    pub fn tail(&self) -> BitVector {
        BitVector::from_bools(self.iter().skip(1))
    }

    /// Hex rendering, first coordinate in the most significant bit of the
    /// first digit; the last digit is zero-padded on the right.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.len.div_ceil(4));
        for chunk in 0..self.len.div_ceil(4) {
            let mut nib = 0u8;
            for k in 0..4 {
                let i = chunk * 4 + k;
                nib <<= 1;
                if i < self.len && self.get(i) {
                    nib |= 1;
                }
            }
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(len: usize, hex: &str) -> Result<Self, FormatError> {
        let hex = hex.trim();
        if hex.len() != len.div_ceil(4) {
            return Err(FormatError::new(format!(
                "hex string of {} digits cannot hold exactly {len} bits",
                hex.len()
            )));
        }
        let mut v = BitVector::zeros(len);
        for (chunk, c) in hex.chars().enumerate() {
            let nib = c
                .to_digit(16)
                .ok_or_else(|| FormatError::new(format!("bad hex digit {c:?}")))?;
            for k in 0..4 {
                let i = chunk * 4 + k;
                let bit = (nib >> (3 - k)) & 1 == 1;
                if i < len {
                    v.set(i, bit);
                } else if bit {
                    return Err(FormatError::new("nonzero padding bits in hex string"));
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A periodic binary sequence stored as one full period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSeq {
    bits: BitVector,
}

impl BitSeq {
    pub fn new(bits: BitVector) -> Self {
        assert!(!bits.is_empty(), "a periodic sequence needs at least one bit");
        BitSeq { bits }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self::new(BitVector::from_bits(bits))
    }

    pub fn from_bit_str(s: &str) -> Result<Self, FormatError> {
        let v = BitVector::from_bit_str(s)?;
        if v.is_empty() {
            return Err(FormatError::new("empty sequence"));
        }
        Ok(Self::new(v))
    }

    pub fn period(&self) -> usize {
        self.bits.len()
    }

    /// Bit at index `i`, taken cyclically.
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i % self.period())
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    /// The `n`-bit window starting at position `i` (cyclic).
    pub fn window(&self, i: usize, n: usize) -> BitVector {
        BitVector::from_bools((0..n).map(|k| self.get(i + k)))
    }

    /// Window starting at `i` packed into a `u64` (bit `k` = element `i + k`).
    pub fn window_u64(&self, i: usize, n: usize) -> u64 {
        assert!(n <= 64);
        let mut w = 0u64;
        for k in 0..n {
            if self.get(i + k) {
                w |= 1 << k;
            }
        }
        w
    }

    /// Left shift `L^k`.
    pub fn shifted(&self, k: usize) -> BitSeq {
        BitSeq::new(BitVector::from_bools((0..self.period()).map(|i| self.get(i + k))))
    }

    /// Serialized as `period=<N>;hex=<digits>`.
    pub fn to_hex_record(&self) -> String {
        format!("period={};hex={}", self.period(), self.bits.to_hex())
    }

    pub fn from_hex_record(s: &str) -> Result<Self, FormatError> {
        let s = s.trim();
        let rest = s
            .strip_prefix("period=")
            .ok_or_else(|| FormatError::new("sequence record must start with period="))?;
        let (period, hex) = rest
            .split_once(";hex=")
            .ok_or_else(|| FormatError::new("sequence record missing ;hex="))?;
        let period: usize = period
            .parse()
            .map_err(|_| FormatError::new(format!("bad period {period:?}")))?;
        if period == 0 {
            return Err(FormatError::new("period must be positive"));
        }
        Ok(BitSeq::new(BitVector::from_hex(period, hex)?))
    }

    /// True when every cyclic `n`-window is distinct and the period is `2^n`.
    pub fn is_de_bruijn(&self, n: usize) -> bool {
        n < 32 && self.period() == 1usize << n && self.distinct_windows(n) == 1usize << n
    }

    /// True when the period is `2^n - 1` and all cyclic `n`-windows are
    /// distinct and nonzero.
    pub fn is_modified_de_bruijn(&self, n: usize) -> bool {
        n < 32
            && self.period() == (1usize << n) - 1
            && self.distinct_windows(n) == self.period()
            && (0..self.period()).all(|i| self.window_u64(i, n) != 0)
    }

    fn distinct_windows(&self, n: usize) -> usize {
        let mut seen = vec![false; 1usize << n];
        let mut count = 0;
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut w = self.window_u64(0, n);
        for i in 0..self.period() {
            if i > 0 {
                w = (w >> 1) | ((self.get(i + n - 1) as u64) << (n - 1));
                w &= mask;
            }
            if !seen[w as usize] {
                seen[w as usize] = true;
                count += 1;
            }
        }
        count
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits)
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq({})", self.bits)
    }
}

/// Square matrix over GF(2) acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        BitMatrix {
            rows: vec![BitVector::zeros(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            rows: (0..n).map(|i| BitVector::basis(n, i)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        BitMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b);
    }

    /// Row vector times matrix: `v · self`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.dim());
        let mut out = BitVector::zeros(self.dim());
        for i in v.ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    /// Matrix times column vector: `self · c`.
    pub fn apply_column(&self, c: &BitVector) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.dot(c)))
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix {
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    /// `self^e` by square-and-multiply.
    pub fn pow(&self, e: &BigUint) -> BitMatrix {
        let mut result = BitMatrix::identity(self.dim());
        if e.is_zero() {
            return result;
        }
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = result.mul(&result);
            if e.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }

    pub fn transpose(&self) -> BitMatrix {
        let n = self.dim();
        let mut t = BitMatrix::zeros(n);
        for i in 0..n {
            for j in self.rows[i].ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// Solves `x · self = b` for the row vector `x`; `None` when singular.
    pub fn solve_left(&self, b: &BitVector) -> Option<BitVector> {
        // x · A = b  <=>  A^T · x^T = b^T
        solve_columns(&self.transpose(), b)
    }

    /// Inverse matrix, `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.dim();
        let mut a = self.rows.clone();
        let mut inv: Vec<BitVector> = (0..n).map(|i| BitVector::basis(n, i)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r].get(col))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r].get(col) {
                    let (ar, ac) = (a[r].clone(), a[col].clone());
                    let _ = ar;
                    a[r].xor_assign(&ac);
                    let ic = inv[col].clone();
                    inv[r].xor_assign(&ic);
                }
            }
        }
        Some(BitMatrix { rows: inv })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Gaussian elimination for `M · x = b` with `M` given by rows.
pub(crate) fn solve_columns(m: &BitMatrix, b: &BitVector) -> Option<BitVector> {
    let n = m.dim();
    assert_eq!(b.len(), n);
    // augmented rows: n coefficient bits + 1 rhs bit
    let mut rows: Vec<(BitVector, bool)> = (0..n).map(|i| (m.row(i).clone(), b.get(i))).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| rows[r].0.get(col))?;
        rows.swap(col, pivot);
        let (prow, pb) = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && row.0.get(col) {
                row.0.xor_assign(&prow);
                row.1 ^= pb;
            }
        }
    }
    Some(BitVector::from_bools(rows.iter().map(|r| r.1)))
}
