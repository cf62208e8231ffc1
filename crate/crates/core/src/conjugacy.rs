//! Conjugate pairs between the cycles of `Ω(f)`.
//!
//! The conjugate of `φ(α^k)` is `φ(α^{τ(k)})`; the zero state and `φ(1)`
//! form the one remaining pair.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cycles::{Cycle, CycleCtx, CyclePos};
use crate::error::{Error, Result};
use crate::exp::ExpInt;

/// Two states differing only in the first coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugatePair {
    pub left: CyclePos,
    pub right: CyclePos,
}

impl ConjugatePair {
    /// The pair `(0, φ(1))` joining `[0]` to `[u_0]`.
    pub fn zero_pair(ctx: &CycleCtx) -> ConjugatePair {
        let zero = ctx
            .position_of_state(&crate::bits::BitVector::zeros(ctx.n()))
            .expect("zero state");
        ConjugatePair {
            left: zero,
            right: ctx.position_of_exponent(&BigUint::zero()),
        }
    }

    /// The pair through exponent `k` and `τ(k)`.
    pub fn from_exponent(ctx: &CycleCtx, k: &ExpInt) -> Result<ConjugatePair> {
        let left = ctx.position_of_exponent(k);
        let right = conjugate_of(ctx, &left)?;
        Ok(ConjugatePair { left, right })
    }
}

/// The conjugate position of `pos`.
pub fn conjugate_of(ctx: &CycleCtx, pos: &CyclePos) -> Result<CyclePos> {
    match &pos.exponent {
        None => Ok(ctx.position_of_exponent(&BigUint::zero())),
        Some(k) if k.is_zero() => ctx.position_of_state(&crate::bits::BitVector::zeros(ctx.n())),
        Some(k) => {
            let tk = ctx.zech().get(k).ok_or_else(|| Error::MissingEntry(k.to_string()))?;
            Ok(ctx.position_of_exponent(&tk))
        }
    }
}

/// The conjugate pairs carried by the coset `D_j` and its image `D_{τ(j)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPairBatch {
    pub j: ExpInt,
    pub tau_j: ExpInt,
    /// `|D_j|`.
    pub n_j: usize,
    /// Least `m ≥ 1` with `(2^m - 1) j ≡ 0 (mod t)`.
    pub m_j: usize,
    /// The `m_j` distinct cycle pairs `(2^s j mod t, 2^s τ(j) mod t)`.
    pub cycle_pairs: Vec<(u64, u64)>,
}

impl CosetPairBatch {
    /// Conjugate pairs per cycle pair.
    pub fn pairs_per_cycle_pair(&self) -> usize {
        self.n_j / self.m_j
    }

    /// Lazily yields the exponent pairs `(2^s j, 2^s τ(j))`, `s < n_j`.
    pub fn exponent_pairs<'a>(&'a self, ctx: &'a CycleCtx) -> impl Iterator<Item = (ExpInt, ExpInt)> + 'a {
        (0..self.n_j).map(move |s| (ctx.ring().rotl(&self.j, s), ctx.ring().rotl(&self.tau_j, s)))
    }
}

/// Groups the conjugate pairs of `D_j` by cycle pair. Returns `None` when
/// `j ≡ τ(j) (mod t)`: both states then lie on one cycle and give no edge.
pub fn pairs_from_coset(ctx: &CycleCtx, j: &ExpInt) -> Result<Option<CosetPairBatch>> {
    let ring = ctx.ring();
    let j = ring.reduce(j);
    let tau_j = ctx.zech().get(&j).ok_or_else(|| Error::MissingEntry(j.to_string()))?;
    let t = BigUint::from(ctx.t());
    let jm = (&j % &t).to_u64().unwrap();
    let tm = (&tau_j % &t).to_u64().unwrap();
    if jm == tm {
        return Ok(None);
    }
    let n_j = ring.coset(&j).size;
    let tt = ctx.t();
    let mut cycle_pairs = vec![(jm, tm)];
    let (mut a, mut b) = (jm, tm);
    loop {
        a = (2 * a as u128 % tt as u128) as u64;
        b = (2 * b as u128 % tt as u128) as u64;
        if a == jm && b == tm {
            break;
        }
        cycle_pairs.push((a, b));
    }
    let m_j = cycle_pairs.len();
    debug_assert_eq!(n_j % m_j, 0);
    Ok(Some(CosetPairBatch {
        j,
        tau_j,
        n_j,
        m_j,
        cycle_pairs,
    }))
}

/// The `t × t` matrix `(i, j)_t = #{k ∈ [1, 2^n - 2] : k ≡ i, τ(k) ≡ j (mod t)}`.
///
/// `k = 0` is excluded since `1 + 1 = 0` lies in no class.
pub fn cyclotomic_numbers(ctx: &CycleCtx) -> Result<Vec<Vec<u64>>> {
    let z = ctx.zech();
    if !z.is_complete() {
        return Err(Error::MissingEntry("table is incomplete".into()));
    }
    let m = ctx
        .ring()
        .modulus_u64()
        .filter(|&m| m < 1 << 32)
        .ok_or_else(|| Error::Resource("field too large for exhaustive counting".into()))?;
    let t = ctx.t();
    let mut out = vec![vec![0u64; t as usize]; t as usize];
    for k in 1..m {
        let v = z.get_u64(k).expect("complete table");
        out[(k % t) as usize][(v % t) as usize] += 1;
    }
    Ok(out)
}

/// One line `k tau(k) i j l m` per pair: exponents, then the cycle and
/// offset of each side.
pub fn pair_dump_line(ctx: &CycleCtx, k: &ExpInt, tau_k: &ExpInt) -> String {
    let t = BigUint::from(ctx.t());
    let (j, i) = k.div_rem(&t);
    let (m, l) = tau_k.div_rem(&t);
    format!("{k} {tau_k} {i} {j} {l} {m}")
}

/// Cycle of the exponent `k` in `Ω(f)`.
pub fn cycle_of_exponent(ctx: &CycleCtx, k: &ExpInt) -> Cycle {
    Cycle::U((k % BigUint::from(ctx.t())).to_u64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitVector;
    use crate::gf2poly::BinPoly;
    use crate::zech::{zech_bruteforce, ZechTable};
    use std::sync::Arc;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn ctx(poly: &str, t: u64) -> CycleCtx {
        let q: BinPoly = poly.parse().unwrap();
        CycleCtx::new(&q, t, Arc::new(zech_bruteforce(&q).unwrap())).unwrap()
    }

    #[test]
    fn example_pairs_n4() {
        let c = ctx("x^4+x+1", 3);
        let pair = ConjugatePair::from_exponent(&c, &b(3)).unwrap();
        assert_eq!(pair.right.exponent, Some(b(14)));
        assert_eq!(pair.left.state, BitVector::from_bits(&[0, 0, 0, 1]));
        assert_eq!(pair.right.state, BitVector::from_bits(&[1, 0, 0, 1]));
        assert_eq!((pair.left.cycle, pair.right.cycle), (Cycle::U(0), Cycle::U(2)));
        let pair = ConjugatePair::from_exponent(&c, &b(6)).unwrap();
        assert_eq!(pair.right.exponent, Some(b(13)));
        assert_eq!((pair.left.cycle, pair.right.cycle), (Cycle::U(0), Cycle::U(1)));
        let z = ConjugatePair::zero_pair(&c);
        assert_eq!(z.left.cycle, Cycle::Zero);
        assert_eq!(z.right.state, BitVector::unit(4));
    }

    #[test]
    fn conjugation_is_an_involution() {
        let c = ctx("n=10;{3}", 31);
        for k in 0..1023u64 {
            let pos = c.position_of_exponent(&b(k));
            let hat = conjugate_of(&c, &pos).unwrap();
            assert_eq!(hat.state.tail(), pos.state.tail());
            assert_ne!(hat.state.get(0), pos.state.get(0));
            assert_eq!(conjugate_of(&c, &hat).unwrap(), pos);
        }
    }

    #[test]
    fn example_batches_n300() {
        let q: BinPoly = "n=300;{7}".parse().unwrap();
        let mut z = ZechTable::new(300, Some(q.clone()));
        z.insert(&b(7), &b(300), crate::zech::Provenance::Seed).unwrap();
        let c = CycleCtx::new(&q, 31, Arc::new(z)).unwrap();
        let batch = pairs_from_coset(&c, &b(7)).unwrap().unwrap();
        assert_eq!(batch.m_j, 5);
        assert_eq!(batch.pairs_per_cycle_pair(), 60);
        assert_eq!(batch.cycle_pairs, vec![(7, 21), (14, 11), (28, 22), (25, 13), (19, 26)]);
        let first = ConjugatePair::from_exponent(&c, &b(7)).unwrap();
        assert_eq!((first.right.cycle, first.right.offset.clone()), (Cycle::U(21), b(9)));
        assert_eq!(batch.exponent_pairs(&c).count(), 300);
        assert!(pairs_from_coset(&c, &b(1)).is_err());
    }

    #[test]
    fn same_cycle_signal() {
        let c = ctx("n=10;{3}", 31);
        let same = (1..1023u64)
            .find(|&k| c.zech().get_u64(k).unwrap() % 31 == k % 31)
            .unwrap();
        assert!(pairs_from_coset(&c, &b(same)).unwrap().is_none());
    }

    #[test]
    fn cyclotomic_identities() {
        for (poly, t) in [("x^4+x+1", 3u64), ("n=10;{3}", 31), ("n=10;{3}", 11)] {
            let c = ctx(poly, t);
            let cn = cyclotomic_numbers(&c).unwrap();
            let e = c.e().to_u64().unwrap();
            let total: u64 = cn.iter().flatten().sum();
            assert_eq!(total, c.ring().modulus_u64().unwrap() - 1);
            for (i, row) in cn.iter().enumerate() {
                assert_eq!(row.iter().sum::<u64>(), e - (i == 0) as u64);
            }
        }
    }

    #[test]
    fn cyclotomic_n4_by_field_oracle() {
        // direct field arithmetic in GF(16) = GF(2)[x]/(x^4+x+1)
        let q: BinPoly = "x^4+x+1".parse().unwrap();
        let mut pow = vec![BinPoly::one()];
        for _ in 1..15 {
            let next = pow.last().unwrap().shl(1).rem(&q);
            pow.push(next);
        }
        let mut oracle = vec![vec![0u64; 3]; 3];
        for k in 1..15usize {
            let s = pow[k].add(&BinPoly::one());
            let l = pow.iter().position(|x| *x == s).unwrap();
            oracle[k % 3][l % 3] += 1;
        }
        let c = ctx("x^4+x+1", 3);
        assert_eq!(cyclotomic_numbers(&c).unwrap(), oracle);
    }

    #[test]
    fn pair_counts_match_cyclotomic_numbers() {
        for (poly, t) in [("x^4+x+1", 3u64), ("n=10;{3}", 11)] {
            let c = ctx(poly, t);
            let cn = cyclotomic_numbers(&c).unwrap();
            let m = c.ring().modulus_u64().unwrap();
            let mut counts = vec![vec![0u64; t as usize]; t as usize];
            for k in 1..m {
                let pair = ConjugatePair::from_exponent(&c, &b(k)).unwrap();
                let (Cycle::U(i), Cycle::U(j)) = (pair.left.cycle, pair.right.cycle) else {
                    unreachable!()
                };
                counts[i as usize][j as usize] += 1;
            }
            assert_eq!(counts, cn);
        }
    }

    #[test]
    fn dump_format() {
        let c = ctx("x^4+x+1", 3);
        assert_eq!(pair_dump_line(&c, &b(3), &b(14)), "3 14 0 1 2 4");
    }
}
