//! Cross-join pairs located by Zech logarithms, their application to
//! feedback functions, and Fryers-formula accounting.

use std::collections::BTreeSet;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bits::{BitSeq, BitVector};
use crate::error::{Error, Result};
use crate::exp::ExpInt;
use crate::gf2poly::{insert_zero, lfsr_state_at, BinPoly};
use crate::joining::{materialize, Anf, FeedbackFn};
use crate::zech::ZechTable;

/// Rejection-sampling cap of [`random_crossjoin`].
pub const RESAMPLE_CAP: u64 = 1_000_000;

/// Two conjugate pairs whose states occur in the order `α, β, α̂, β̂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CrossJoinPair {
    pub alpha: BitVector,
    pub beta: BitVector,
}

impl CrossJoinPair {
    pub fn new(alpha: BitVector, beta: BitVector) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.len() < 2 {
            return Err(Error::Domain("states must share a length of at least 2".into()));
        }
        if alpha.tail() == beta.tail() {
            return Err(Error::Domain("the two pairs share a tail".into()));
        }
        Ok(CrossJoinPair { alpha, beta })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// `A`.
    pub fn a_tail(&self) -> BitVector {
        self.alpha.tail()
    }

    /// `B`.
    pub fn b_tail(&self) -> BitVector {
        self.beta.tail()
    }

    pub fn alpha_hat(&self) -> BitVector {
        let mut v = self.alpha.clone();
        v.flip(0);
        v
    }

    pub fn beta_hat(&self) -> BitVector {
        let mut v = self.beta.clone();
        v.flip(0);
        v
    }
}

/// `ĥ = h + ∏(x_i + a_i + 1) + ∏(x_i + b_i + 1)` over `i ∈ [1, n-1]`.
pub fn apply_crossjoin(h: &Anf, pair: &CrossJoinPair) -> Result<Anf> {
    if pair.n() != h.n() {
        return Err(Error::Domain("pair and feedback differ in order".into()));
    }
    if pair.a_tail() == pair.b_tail() {
        return Err(Error::Domain("A equals B".into()));
    }
    let mut out = h.clone();
    out.add_assign(&Anf::tail_indicator(h.n(), &pair.a_tail()));
    out.add_assign(&Anf::tail_indicator(h.n(), &pair.b_tail()));
    Ok(out)
}

/// [`apply_crossjoin`] on a symbolic feedback function.
pub fn apply_crossjoin_symbolic(h: &FeedbackFn, pair: &CrossJoinPair) -> Result<FeedbackFn> {
    if pair.a_tail() == pair.b_tail() {
        return Err(Error::Domain("A equals B".into()));
    }
    let mut out = h.clone();
    out.toggle_tail(pair.a_tail());
    out.toggle_tail(pair.b_tail());
    Ok(out)
}

/// Whether the chords `{a, a'}` and `{b, b'}` cross on a circle.
pub fn chords_cross<T: Ord>(a: &T, a2: &T, b: &T, b2: &T) -> bool {
    let (lo, hi) = if a < a2 { (a, a2) } else { (a2, a) };
    let inside = |x: &T| lo < x && x < hi;
    inside(b) != inside(b2)
}

/// Order of a de Bruijn (period `2^n`) or modified de Bruijn (period
/// `2^n - 1`) sequence.
pub fn debruijn_order(seq: &BitSeq) -> Result<(usize, bool)> {
    let p = seq.period();
    if p >= 2 && p.is_power_of_two() {
        let n = p.trailing_zeros() as usize;
        if seq.is_de_bruijn(n) {
            return Ok((n, false));
        }
    }
    if (p + 1).is_power_of_two() && p >= 1 {
        let n = (p + 1).trailing_zeros() as usize;
        if seq.is_modified_de_bruijn(n) {
            return Ok((n, true));
        }
    }
    Err(Error::Domain("not a (modified) de Bruijn sequence".into()))
}

/// Every cross-join pair of the sequence, with `α` the earliest of the four
/// states counted from position 0.
pub fn enumerate_crossjoin_pairs(seq: &BitSeq) -> Result<Vec<CrossJoinPair>> {
    let (n, _) = debruijn_order(seq)?;
    if n > 16 {
        return Err(Error::Resource(format!("order {n} is too large to scan")));
    }
    let mut pos = vec![usize::MAX; 1 << n];
    for i in 0..seq.period() {
        pos[seq.window_u64(i, n) as usize] = i;
    }
    // chords indexed by tail; packed state bit 0 is the first coordinate
    let mut chords: Vec<(usize, usize, u64)> = Vec::new();
    for tail in 0..1u64 << (n - 1) {
        let (p0, p1) = (pos[(tail << 1) as usize], pos[(tail << 1 | 1) as usize]);
        if p0 != usize::MAX && p1 != usize::MAX {
            chords.push((p0.min(p1), p0.max(p1), tail));
        }
    }
    chords.sort();
    let state = |i: usize| BitVector::from_u64(n, seq.window_u64(i, n));
    let mut out = Vec::new();
    for (x, &(a0, a1, _)) in chords.iter().enumerate() {
        for &(b0, b1, _) in &chords[x + 1..] {
            if a0 < b0 && b0 < a1 && a1 < b1 {
                out.push(CrossJoinPair {
                    alpha: state(a0),
                    beta: state(b0),
                });
            }
        }
    }
    Ok(out)
}

/// Feedback function of a (modified) de Bruijn sequence, read from its
/// windows. A modified sequence is completed with its missing zero first.
pub fn feedback_of_sequence(seq: &BitSeq) -> Result<Anf> {
    let (n, modified) = debruijn_order(seq)?;
    if n > 20 {
        return Err(Error::Resource(format!("order {n} is too large")));
    }
    let full = if modified { insert_zero(seq)? } else { seq.clone() };
    let mut table = vec![false; 1 << n];
    for i in 0..full.period() {
        table[full.window_u64(i, n) as usize] = full.get(i + n);
    }
    Ok(anf_from_truth_table(n, &table))
}

/// Möbius transform of a truth table indexed by packed inputs.
pub fn anf_from_truth_table(n: usize, table: &[bool]) -> Anf {
    assert_eq!(table.len(), 1 << n);
    let mut t = table.to_vec();
    for i in 0..n {
        for x in 0..t.len() {
            if x >> i & 1 == 1 {
                t[x] ^= t[x ^ (1 << i)];
            }
        }
    }
    Anf::from_monomials(
        n,
        t.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(x, _)| (0..n as u16).filter(|&i| x >> i & 1 == 1).collect()),
    )
}

/// Result of one cross-join on an m-sequence.
#[derive(Clone, Debug)]
pub struct CrossJoin {
    pub p: BinPoly,
    pub a: ExpInt,
    pub b: ExpInt,
    pub tau_a: ExpInt,
    pub tau_b: ExpInt,
    pub seed: Option<u64>,
    pub pair: CrossJoinPair,
    /// Generates a modified de Bruijn sequence of period `2^n - 1`.
    pub feedback: FeedbackFn,
}

impl CrossJoin {
    /// `p, a, b, τ(a), τ(b), seed`.
    pub fn provenance(&self) -> serde_json::Value {
        json!({
            "p": self.p.to_text(),
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "tau_a": self.tau_a.to_string(),
            "tau_b": self.tau_b.to_string(),
            "seed": self.seed,
        })
    }

    /// The first `len` bits from the state `(1, 0, ..., 0)`.
    pub fn sequence_prefix(&self, len: usize) -> BitVector {
        let n = self.pair.n();
        let mut s = crate::joining::BitStream::resume(self.feedback.clone(), BitVector::unit(n)).expect("state length");
        s.next_block(len)
    }
}

/// Cross-join on the m-sequence of `p` through `(a, τ(a))` and `(b, τ(b))`,
/// requiring `a < b < τ(a) < τ(b)`.
pub fn crossjoin_from_exponents(p: &BinPoly, zech: &ZechTable, a: &ExpInt, b: &ExpInt) -> Result<CrossJoin> {
    let tau = |k: &ExpInt| zech.get(k).ok_or_else(|| Error::MissingEntry(k.to_string()));
    let (ta, tb) = (tau(a)?, tau(b)?);
    if !(a < b && b < &ta && ta < tb) {
        return Err(Error::Domain(format!("{a} < {b} < {ta} < {tb} fails")));
    }
    build_crossjoin(p, a, b, ta, tb, None)
}

fn build_crossjoin(
    p: &BinPoly,
    a: &ExpInt,
    b: &ExpInt,
    ta: ExpInt,
    tb: ExpInt,
    seed: Option<u64>,
) -> Result<CrossJoin> {
    let n = p.deg();
    let e0 = BitVector::unit(n);
    // positions along the m-sequence are exponents, so this is the
    // positional interleaving test
    if !chords_cross(a, &ta, b, &tb) {
        return Err(Error::Domain("states do not interleave".into()));
    }
    let pair = CrossJoinPair::new(lfsr_state_at(p, &e0, a)?, lfsr_state_at(p, &e0, b)?)?;
    let mut feedback = FeedbackFn::new(Anf::linear_from_poly(p));
    feedback.toggle_tail(pair.a_tail());
    feedback.toggle_tail(pair.b_tail());
    Ok(CrossJoin {
        p: p.clone(),
        a: a.clone(),
        b: b.clone(),
        tau_a: ta,
        tau_b: tb,
        seed,
        pair,
        feedback,
    })
}

/// Exponents whose logarithm the table resolves.
fn known_exponents(zech: &ZechTable, limit: usize) -> Vec<ExpInt> {
    let ring = zech.ring();
    let mut out = BTreeSet::new();
    for (leader, _, _) in zech.entries() {
        for k in ring.coset_elements(&leader) {
            out.insert(k);
            if out.len() >= limit {
                return out.into_iter().collect();
            }
        }
    }
    out.into_iter().collect()
}

/// Samples `(a, b)` until `a < b < τ(a) < τ(b)` and builds the cross-join.
///
/// With a complete table `a, b` are uniform on `[1, 2^n - 2]`; otherwise
/// they are drawn from the exponents the table resolves.
pub fn random_crossjoin(p: &BinPoly, zech: &ZechTable, seed: u64) -> Result<CrossJoin> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = zech.ring().modulus().clone();
    if m < BigUint::from(3u32) {
        return Err(Error::Domain("order too small for cross-joins".into()));
    }
    let pool = if zech.is_complete() {
        None
    } else {
        let pool = known_exponents(zech, 1 << 22);
        if pool.len() < 2 {
            return Err(Error::Budget("too few resolved logarithms to sample from".into()));
        }
        Some(pool)
    };
    let upper = &m - 1u32;
    for _ in 0..RESAMPLE_CAP {
        let (a, b) = match &pool {
            None => (
                rng.gen_biguint_range(&BigUint::one(), &upper),
                rng.gen_biguint_range(&BigUint::one(), &upper),
            ),
            Some(pool) => {
                let len = BigUint::from(pool.len());
                let i = rng.gen_biguint_below(&len).to_usize().unwrap();
                let j = rng.gen_biguint_below(&len).to_usize().unwrap();
                (pool[i].clone(), pool[j].clone())
            }
        };
        if a >= b {
            continue;
        }
        let (Some(ta), Some(tb)) = (zech.get(&a), zech.get(&b)) else {
            continue;
        };
        if b < ta && ta < tb {
            return build_crossjoin(p, &a, &b, ta, tb, Some(seed));
        }
    }
    Err(Error::Budget(format!("no valid pair after {RESAMPLE_CAP} samples")))
}

/// `N(ℓ; k) = C(2^{n-1}, k) / 2^{n-1}` for odd `k`, zero otherwise.
pub fn fryers_coefficient(n: usize, k: u64) -> BigUint {
    assert!(n >= 2);
    let big_n = 1u64 << (n - 1);
    if k.is_multiple_of(2) || k >= big_n {
        return BigUint::zero();
    }
    binomial(big_n, k) >> (n - 1)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `2^{2^{n-1} - n}`, the number of de Bruijn sequences of order `n`.
pub fn fryers_total(n: usize) -> BigUint {
    assert!(n >= 2);
    BigUint::one() << ((1usize << (n - 1)) - n)
}

/// The positive coefficients `N(ℓ; 1), N(ℓ; 3), ...` in order.
pub fn fryers_coefficients(n: usize) -> Vec<BigUint> {
    assert!(n >= 2);
    let big_n = 1u64 << (n - 1);
    let mut out = Vec::with_capacity(big_n as usize / 2);
    // C(N, k) walked upward in steps of one
    let mut c = BigUint::one();
    for k in 0..big_n {
        if k > 0 {
            c *= big_n - k + 1;
            c /= k;
        }
        if k % 2 == 1 {
            out.push(&c >> (n - 1));
        }
    }
    out
}

/// Breadth-first closure of cross-join applications.
#[derive(Clone, Debug)]
pub struct BfsResult {
    /// Distinct feedback functions in discovery order, the start included.
    pub found: Vec<Anf>,
    /// New functions per depth; `layers[0] = 1`.
    pub layers: Vec<usize>,
    pub truncated: bool,
}

/// Repeats cross-joins from `seq` for up to `depth` rounds, keeping only
/// feedback functions not seen before; stops once `budget` functions exist.
pub fn crossjoin_bfs(seq: &BitSeq, depth: usize, budget: usize) -> Result<BfsResult> {
    let start = feedback_of_sequence(seq)?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut found = vec![start.clone()];
    let mut layers = vec![1];
    let mut frontier = vec![start];
    let mut truncated = false;
    'outer: for _ in 0..depth {
        let mut next = Vec::new();
        for h in &frontier {
            let s = materialize(&FeedbackFn::new(h.clone()))?;
            for pair in enumerate_crossjoin_pairs(&s)? {
                let g = apply_crossjoin(h, &pair)?;
                if seen.insert(g.clone()) {
                    if found.len() >= budget {
                        truncated = true;
                        layers.push(next.len());
                        break 'outer;
                    }
                    found.push(g.clone());
                    next.push(g);
                }
            }
        }
        layers.push(next.len());
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(BfsResult {
        found,
        layers,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::m_sequence;
    use crate::zech::{zech_bruteforce, zech_seed_trinomial};
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_bit_str(s).unwrap()
    }

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn anf5(s: &str) -> Anf {
        Anf::parse(s, 5).unwrap()
    }

    fn h_s() -> Anf {
        anf5("x0 + x1*x2*x3*x4 + x1*x2*x4 + x1*x3*x4 + x1*x3 + x1 + x2*x3*x4 + x2*x3 + x3 + 1")
    }

    fn h_t() -> Anf {
        anf5("x0 + x1*x2*x3*x4 + x1*x2*x3 + x1*x2 + x1*x3*x4 + x1*x3 + x1 + x2*x3 + x3 + 1")
    }

    fn h_r() -> Anf {
        anf5("x0 + x1*x2*x3*x4 + x1*x2*x4 + x1*x3 + x1 + x2*x3*x4 + x2*x4 + x2 + x3 + 1")
    }

    fn pair_from_tails(a: &str, bb: &str) -> CrossJoinPair {
        CrossJoinPair::new(bv(&format!("0{a}")), bv(&format!("0{bb}"))).unwrap()
    }

    #[test]
    fn example_six_chain() {
        let t = apply_crossjoin(&h_s(), &pair_from_tails("1100", "0111")).unwrap();
        assert_eq!(t, h_t());
        let r = apply_crossjoin(&t, &pair_from_tails("1011", "0100")).unwrap();
        assert_eq!(r, h_r());
        let expect = [
            ("00000110110001001011111001110101", h_s()),
            ("00000110110011111000100101110101", h_t()),
            ("00000110111010100101100111110001", h_r()),
        ];
        for (bits, h) in expect {
            let s = materialize(&FeedbackFn::new(h.clone())).unwrap();
            assert!(s.is_de_bruijn(5));
            assert_eq!(s, BitSeq::from_bit_str(bits).unwrap());
            assert_eq!(feedback_of_sequence(&s).unwrap(), h);
        }
        // the pairs really interleave in S and T
        let s = materialize(&FeedbackFn::new(h_s())).unwrap();
        let tails: Vec<_> = enumerate_crossjoin_pairs(&s)
            .unwrap()
            .iter()
            .map(|p| (p.a_tail(), p.b_tail()))
            .collect();
        assert!(tails.contains(&(bv("1100"), bv("0111"))));
    }

    #[test]
    fn same_tail_rejected() {
        assert!(CrossJoinPair::new(bv("01010"), bv("11010")).is_err());
        let fake = CrossJoinPair {
            alpha: bv("01010"),
            beta: bv("11010"),
        };
        assert!(apply_crossjoin(&h_s(), &fake).is_err());
    }

    #[test]
    fn example_seven() {
        let p: BinPoly = "x^5+x^2+1".parse().unwrap();
        let z = zech_bruteforce(&p).unwrap();
        let cj = crossjoin_from_exponents(&p, &z, &b(7), &b(21)).unwrap();
        assert_eq!((cj.tau_a.clone(), cj.tau_b.clone()), (b(22), b(25)));
        assert_eq!(cj.pair.alpha, bv("01011"));
        assert_eq!(cj.pair.beta, bv("01101"));
        assert_eq!(
            cj.feedback.to_anf(1 << 10).unwrap(),
            anf5("x0 + x1*x2*x4 + x1*x3*x4 + x2")
        );
        assert_eq!(cj.sequence_prefix(31), bv("1000010010111011001111100011010"));
        let s = BitSeq::new(cj.sequence_prefix(31));
        assert!(s.is_modified_de_bruijn(5));
        // the printed exponents (3, 17) give other logarithms
        assert_eq!((z.get_u64(3), z.get_u64(17)), (Some(29), Some(30)));
    }

    #[test]
    fn random_crossjoins_are_valid() {
        let p: BinPoly = "n=10;{3}".parse().unwrap();
        let z = zech_bruteforce(&p).unwrap();
        for seed in 0..20 {
            let cj = random_crossjoin(&p, &z, seed).unwrap();
            assert!(cj.a < cj.b && cj.b < cj.tau_a && cj.tau_a < cj.tau_b);
            let s = BitSeq::new(cj.sequence_prefix(1023));
            assert!(s.is_modified_de_bruijn(10));
            let again = random_crossjoin(&p, &z, seed).unwrap();
            assert_eq!(again.a, cj.a);
            assert_eq!(cj.provenance()["seed"], seed);
        }
    }

    #[test]
    fn sparse_table_sampling() {
        let p: BinPoly = "n=31;{3}".parse().unwrap();
        let z = zech_seed_trinomial(&p).unwrap();
        let cj = random_crossjoin(&p, &z, 5).unwrap();
        assert!(cj.a < cj.b && cj.b < cj.tau_a && cj.tau_a < cj.tau_b);
        assert_eq!(cj.feedback.degree().unwrap(), 29);
    }

    #[test]
    fn degree_29_example() {
        let p: BinPoly = "n=31;{3}".parse().unwrap();
        let z = zech_seed_trinomial(&p).unwrap();
        let cj = crossjoin_from_exponents(&p, &z, &b(3), &b(6)).unwrap();
        assert_eq!((cj.tau_a.clone(), cj.tau_b.clone()), (b(31), b(62)));
        let mut alpha = BitVector::zeros(31);
        alpha.set(28, true);
        let mut beta = BitVector::zeros(31);
        beta.set(25, true);
        assert_eq!((cj.pair.alpha.clone(), cj.pair.beta.clone()), (alpha, beta));
        assert_eq!(cj.feedback.base().to_string(), "x0 + x3");
        assert_eq!(cj.feedback.degree().unwrap(), 29);
    }

    #[test]
    fn pair_counts_small() {
        for (poly, n, expect) in [("x^4+x+1", 4usize, 7usize), ("x^5+x^2+1", 5, 35)] {
            let p: BinPoly = poly.parse().unwrap();
            let m = m_sequence(&p);
            assert_eq!(enumerate_crossjoin_pairs(&m).unwrap().len(), expect);
            let full = insert_zero(&m).unwrap();
            assert_eq!(enumerate_crossjoin_pairs(&full).unwrap().len(), expect);
            assert_eq!(fryers_coefficient(n, 3), b(expect as u64));
        }
        assert!(enumerate_crossjoin_pairs(&BitSeq::from_bit_str("0111").unwrap()).is_err());
    }

    /// All crossing conjugate pairs by direct comparison of every 4 positions.
    fn naive_pairs(seq: &BitSeq, n: usize) -> usize {
        let len = seq.period();
        let states: Vec<u64> = (0..len).map(|i| seq.window_u64(i, n)).collect();
        let mut count = 0;
        for i in 0..len {
            for j in i + 1..len {
                for k in j + 1..len {
                    for l in k + 1..len {
                        let (a, bb, c, d) = (states[i], states[j], states[k], states[l]);
                        if c == a ^ 1 && d == bb ^ 1 && a >> 1 != bb >> 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn order_three_against_naive_scan() {
        let s = BitSeq::from_bit_str("00010111").unwrap();
        assert_eq!(enumerate_crossjoin_pairs(&s).unwrap().len(), naive_pairs(&s, 3));
        let s4 = insert_zero(&m_sequence(&"x^4+x+1".parse().unwrap())).unwrap();
        assert_eq!(enumerate_crossjoin_pairs(&s4).unwrap().len(), naive_pairs(&s4, 4));
    }

    #[test]
    fn exponent_order_matches_positions() {
        for poly in ["x^4+x+1", "x^5+x^2+1", "n=7;{1}", "n=8;{4,3,2}", "n=9;{4}", "n=10;{3}"] {
            let p: BinPoly = poly.parse().unwrap();
            let n = p.deg();
            let z = zech_bruteforce(&p).unwrap();
            let m = (1u64 << n) - 1;
            let mut by_exponent = BTreeSet::new();
            for a in 1..m {
                let ta = z.get_u64(a).unwrap();
                for bb in a + 1..ta {
                    let tb = z.get_u64(bb).unwrap();
                    if bb < ta && ta < tb {
                        by_exponent.insert((a, bb));
                    }
                }
            }
            let seq = m_sequence(&p);
            let mut by_position = BTreeSet::new();
            let mut pos = vec![0u64; 1 << n];
            for i in 0..m {
                pos[seq.window_u64(i as usize, n) as usize] = i;
            }
            for pair in enumerate_crossjoin_pairs(&seq).unwrap() {
                by_position.insert((pos[pair.alpha.to_u64() as usize], pos[pair.beta.to_u64() as usize]));
            }
            assert_eq!(by_exponent, by_position, "{poly}");
        }
    }

    #[test]
    fn fryers_values() {
        let four: Vec<_> = (1..8).step_by(2).map(|k| fryers_coefficient(4, k)).collect();
        assert_eq!(four, [1u32, 7, 7, 1].map(BigUint::from));
        assert_eq!(
            fryers_coefficients(5),
            [1u32, 35, 273, 715, 715, 273, 35, 1].map(BigUint::from)
        );
        assert_eq!(fryers_total(4), b(16));
        assert_eq!(fryers_total(5), b(2048));
        assert_eq!(fryers_total(6), b(1 << 26));
        assert_eq!(fryers_coefficient(5, 4), b(0));
        for n in 2..=20usize {
            let big = (1u64 << (n - 1)) as u128;
            let hk = (big - 1) * (big.saturating_sub(2)) / 6;
            assert_eq!(fryers_coefficient(n, 3), BigUint::from(hk), "n={n}");
        }
    }

    #[test]
    fn fryers_symmetry_and_total() {
        for n in 2..=14usize {
            let c = fryers_coefficients(n);
            let rev: Vec<_> = c.iter().rev().cloned().collect();
            assert_eq!(c, rev);
            assert_eq!(c[0], BigUint::one());
            assert_eq!(c.iter().sum::<BigUint>(), fryers_total(n));
        }
    }

    #[test]
    fn bfs_counts() {
        let s4 = m_sequence(&"x^4+x+1".parse().unwrap());
        let r = crossjoin_bfs(&s4, 3, 1000).unwrap();
        assert_eq!(r.found.len(), 16);
        assert_eq!(r.layers, vec![1, 7, 7, 1]);
        let r0 = crossjoin_bfs(&s4, 0, 1000).unwrap();
        assert_eq!(r0.found.len(), 1);
        let s5 = m_sequence(&"x^5+x^2+1".parse().unwrap());
        let r5 = crossjoin_bfs(&s5, 1, 1000).unwrap();
        assert_eq!(r5.layers, vec![1, 35]);
        let cut = crossjoin_bfs(&s5, 2, 20).unwrap();
        assert!(cut.truncated);
        assert_eq!(cut.found.len(), 20);
    }

    /// The pairs `(2^{8i}, 2^{1+8i}, 127·2^{8i}, 127·2^{1+8i})` of `x^127 + x + 1`,
    /// with whether their chords cross.
    fn family_127() -> Vec<(CrossJoinPair, bool)> {
        let p: BinPoly = "n=127;{1}".parse().unwrap();
        let z = zech_seed_trinomial(&p).unwrap();
        let ring = z.ring().clone();
        let e0 = BitVector::unit(127);
        (0..16)
            .map(|i| {
                let a = ring.rotl(&b(1), 8 * i);
                let bb = ring.rotl(&b(1), 8 * i + 1);
                let (ta, tb) = (z.get(&a).unwrap(), z.get(&bb).unwrap());
                assert_eq!(ta, ring.mul(&a, &b(127)));
                assert_eq!(tb, ring.mul(&bb, &b(127)));
                let pair = CrossJoinPair::new(
                    lfsr_state_at(&p, &e0, &a).unwrap(),
                    lfsr_state_at(&p, &e0, &bb).unwrap(),
                );
                (pair.unwrap(), chords_cross(&a, &ta, &bb, &tb))
            })
            .collect()
    }

    #[test]
    fn degree_125_family() {
        let family = family_127();
        let tails: BTreeSet<BitVector> = family.iter().flat_map(|(p, _)| [p.a_tail(), p.b_tail()]).collect();
        assert_eq!(tails.len(), 32);
        // reduced mod 2^127 - 1, the last member nests instead of crossing
        let crossing: Vec<bool> = family.iter().map(|(_, c)| *c).collect();
        assert_eq!(crossing, (0..16).map(|i| i < 15).collect::<Vec<_>>());
        let pairs: Vec<CrossJoinPair> = family.into_iter().filter(|(_, c)| *c).map(|(p, _)| p).collect();
        let h = FeedbackFn::new(Anf::linear_from_poly(&"n=127;{1}".parse().unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut masks: Vec<u32> = (0..15).map(|i| 1 << i).collect();
        masks.push(0x7fff);
        masks.extend((0..40).map(|_| rand::Rng::gen_range(&mut rng, 1..=0x7fffu32)));
        for mask in masks {
            let mut g = h.clone();
            for (i, pair) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g = apply_crossjoin_symbolic(&g, pair).unwrap();
                }
            }
            assert_eq!(g.degree().unwrap(), 125, "mask {mask:#x}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn crossjoin_outputs_are_de_bruijn(which in 0usize..4, pick in any::<prop::sample::Index>()) {
            let poly = ["x^4+x+1", "x^5+x^2+1", "n=7;{1}", "n=9;{4}"][which];
            let p: BinPoly = poly.parse().unwrap();
            let n = p.deg();
            let s = insert_zero(&m_sequence(&p)).unwrap();
            let h = feedback_of_sequence(&s).unwrap();
            let pairs = enumerate_crossjoin_pairs(&s).unwrap();
            let pair = &pairs[pick.index(pairs.len())];
            let g = apply_crossjoin(&h, pair).unwrap();
            let out = materialize(&FeedbackFn::new(g.clone())).unwrap();
            prop_assert!(out.is_de_bruijn(n));
            let diff = h.truth_table().iter().zip(g.truth_table()).filter(|(x, y)| **x != *y).count();
            prop_assert_eq!(diff, 4);
            prop_assert_eq!(apply_crossjoin(&g, pair).unwrap(), h);
        }
    }
}
