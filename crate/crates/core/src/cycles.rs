//! Cycle structure of the LFSR with irreducible characteristic polynomial
//! `f`, where `f` is the minimal polynomial of `β = α^t` for a primitive
//! root `α` of `p`.
//!
//! The nonzero states are indexed by exponents through
//! `φ(α^k) = (m_k, m_{k+t}, ..., m_{k+(n-1)t})`, with `m` the m-sequence of
//! `p` from the seed state that makes `u_0` start at `(1, 0, ..., 0)`.
//! Exponent `k = i + t·j` is the `j`-th state of cycle `[u_i]`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::bits::{solve_columns, BitMatrix, BitVector};
use crate::error::{Error, FormatError, Result};
use crate::exp::{ExpInt, ExpRing};
use crate::gf2poly::{associated_irreducible, is_primitive, lfsr_sequence, mersenne_factors, poly_pow_mod, BinPoly};
use crate::zech::ZechTable;

/// A cycle of `Ω(f)`: the zero cycle or `[u_i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cycle {
    Zero,
    U(u64),
}

impl Cycle {
    /// Vertex index with `[0]` first and `[u_i]` at `i + 1`.
    pub fn vertex(self) -> usize {
        match self {
            Cycle::Zero => 0,
            Cycle::U(i) => i as usize + 1,
        }
    }

    pub fn from_vertex(v: usize) -> Cycle {
        if v == 0 {
            Cycle::Zero
        } else {
            Cycle::U(v as u64 - 1)
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cycle::Zero => f.write_str("[0]"),
            Cycle::U(i) => write!(f, "[u{i}]"),
        }
    }
}

/// A state together with its place in the cycle structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePos {
    /// `None` for the zero state.
    pub exponent: Option<ExpInt>,
    pub cycle: Cycle,
    pub offset: ExpInt,
    pub state: BitVector,
}

/// Decimation context for one `(p, t)` choice.
#[derive(Clone)]
pub struct CycleCtx {
    n: usize,
    t: u64,
    e: ExpInt,
    ring: ExpRing,
    p: BinPoly,
    f: BinPoly,
    zech: Arc<ZechTable>,
    seed: BitVector,
    /// Row `i` is `φ(α^i)` for `i < n`; `φ(α^k)` is `(x^k mod p) · phi`.
    phi: BitMatrix,
    /// First `2n - 1` terms of `u_0`.
    u0: BitVector,
}

impl fmt::Debug for CycleCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CycleCtx(n={}, t={}, p={}, f={})",
            self.n,
            self.t,
            self.p.to_text(),
            self.f.to_text()
        )
    }
}

/// Seed state `v` of the m-sequence of `p` whose `t`-decimation starts with
/// `(1, 0, ..., 0)`: solves `<x^{it} mod p, v> = [i = 0]` for `i < n`.
pub fn u0_seed_state(p: &BinPoly, t: &BigUint) -> Result<BitVector> {
    let n = p.deg();
    let g = poly_pow_mod(&BinPoly::x(), t, p)?;
    let mut r = BinPoly::one();
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        rows.push(BitVector::from_bools((0..n).map(|i| r.coeff(i))));
        r = r.mul(&g).rem(p);
    }
    solve_columns(&BitMatrix::from_rows(rows), &BitVector::unit(n))
        .ok_or_else(|| Error::Domain(format!("decimation by {t} does not give a degree-{n} polynomial")))
}

impl CycleCtx {
    /// Builds the context; `t` must divide `2^n - 1` and give an associated
    /// polynomial of full degree.
    pub fn new(p: &BinPoly, t: u64, zech: Arc<ZechTable>) -> Result<Self> {
        let n = p.deg();
        if n == 0 {
            return Err(Error::Domain("degree must be positive".into()));
        }
        if zech.n() != n {
            return Err(Error::Domain("Zech table degree differs from the polynomial".into()));
        }
        let ring = ExpRing::new(n);
        let tb = BigUint::from(t);
        if t == 0 || !(ring.modulus() % &tb).is_zero() {
            return Err(Error::Domain(format!("{t} does not divide 2^{n}-1")));
        }
        let assoc = associated_irreducible(p, &tb)?;
        if !assoc.valid {
            return Err(Error::Domain(format!(
                "t={t} gives an associated polynomial of degree {} < {n}",
                assoc.degree
            )));
        }
        let seed = u0_seed_state(p, &tb)?;
        let g = poly_pow_mod(&BinPoly::x(), &tb, p)?;
        let mut rows = Vec::with_capacity(n);
        let mut xi = BinPoly::one();
        for _ in 0..n {
            // φ(α^i)_ℓ = <x^{i + ℓt} mod p, seed>
            let mut r = xi.clone();
            let mut row = BitVector::zeros(n);
            for l in 0..n {
                row.set(l, r.exponents().iter().fold(false, |acc, &j| acc ^ seed.get(j)));
                r = r.mul(&g).rem(p);
            }
            rows.push(row);
            xi = xi.shl(1).rem(p);
        }
        let e = ring.modulus() / &tb;
        let u0 = lfsr_sequence(&assoc.f, &BitVector::unit(n), 2 * n - 1);
        Ok(CycleCtx {
            n,
            t,
            e,
            ring,
            p: p.clone(),
            f: assoc.f,
            zech,
            seed,
            phi: BitMatrix::from_rows(rows),
            u0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    /// Period `e = (2^n - 1)/t` of every nonzero cycle.
    pub fn e(&self) -> &ExpInt {
        &self.e
    }

    pub fn ring(&self) -> &ExpRing {
        &self.ring
    }

    pub fn p(&self) -> &BinPoly {
        &self.p
    }

    pub fn f(&self) -> &BinPoly {
        &self.f
    }

    pub fn zech(&self) -> &ZechTable {
        &self.zech
    }

    pub fn zech_arc(&self) -> Arc<ZechTable> {
        Arc::clone(&self.zech)
    }

    pub fn seed(&self) -> &BitVector {
        &self.seed
    }

    /// `φ(α^k)`.
    pub fn exponent_to_state(&self, k: &ExpInt) -> BitVector {
        let r = poly_pow_mod(&BinPoly::x(), &self.ring.reduce(k), &self.p).expect("valid modulus");
        let mut out = BitVector::zeros(self.n);
        for i in r.exponents() {
            out.xor_assign(self.phi.row(i));
        }
        out
    }

    /// The initial state of `[u_i]`, i.e. `φ(α^i)`.
    pub fn initial_state(&self, i: u64) -> BitVector {
        self.exponent_to_state(&BigUint::from(i))
    }

    /// Coordinates `(a_0, ..., a_{n-1})` of `v` in the basis `φ(β^ℓ)`.
    pub fn beta_coordinates(&self, v: &BitVector) -> BitVector {
        let n = self.n;
        let mut a = BitVector::zeros(n);
        a.set(0, v.get(0));
        for m in 1..n {
            // v_m = a_{n-m} + Σ_{ℓ > n-m} a_ℓ u0_{ℓ+m}
            let mut bit = v.get(m);
            for l in (n - m + 1)..n {
                bit ^= a.get(l) & self.u0.get(l + m);
            }
            a.set(n - m, bit);
        }
        a
    }

    /// The exponent `k` with `φ(α^k) = v`, folding
    /// `α^k = Σ a_ℓ α^{tℓ}` through `log(α^x + α^y) = y + τ(x - y)`.
    pub fn state_to_exponent(&self, v: &BitVector) -> Result<ExpInt> {
        if v.len() != self.n {
            return Err(Error::Domain(format!(
                "state length {} differs from {}",
                v.len(),
                self.n
            )));
        }
        if v.is_zero() {
            return Err(Error::Domain("the zero state has no exponent".into()));
        }
        let a = self.beta_coordinates(v);
        let tb = BigUint::from(self.t);
        let mut acc: Option<ExpInt> = None;
        for l in a.ones() {
            let y = self.ring.reduce(&(&tb * l));
            acc = Some(match acc {
                None => y,
                Some(x) => {
                    let d = self.ring.sub(&x, &y);
                    let tz = self.zech.get(&d).ok_or_else(|| Error::MissingEntry(d.to_string()))?;
                    self.ring.add(&y, &tz)
                }
            });
        }
        Ok(acc.expect("nonzero state has a nonzero coordinate"))
    }

    /// Position of the state `φ(α^k)`: cycle `k mod t`, offset `⌊k/t⌋`.
    pub fn position_of_exponent(&self, k: &ExpInt) -> CyclePos {
        let k = self.ring.reduce(k);
        let (j, i) = k.div_rem(&BigUint::from(self.t));
        CyclePos {
            state: self.exponent_to_state(&k),
            exponent: Some(k),
            cycle: Cycle::U(i.to_u64().expect("cycle index fits u64")),
            offset: j,
        }
    }

    /// Position of an arbitrary state (the zero state sits alone in `[0]`).
    pub fn position_of_state(&self, v: &BitVector) -> Result<CyclePos> {
        if v.len() == self.n && v.is_zero() {
            return Ok(CyclePos {
                exponent: None,
                cycle: Cycle::Zero,
                offset: BigUint::zero(),
                state: v.clone(),
            });
        }
        let k = self.state_to_exponent(v)?;
        Ok(self.position_of_exponent(&k))
    }

    /// Serialized as `ctx v1 n=.. t=.. p=.. f=.. seed=<hex>`.
    pub fn to_text(&self) -> String {
        format!(
            "ctx v1 n={} t={} p={} f={} seed={}",
            self.n,
            self.t,
            self.p.to_text(),
            self.f.to_text(),
            self.seed.to_hex()
        )
    }

    /// Rebuilds a context from its text form, checking the stored `f` and
    /// seed against a fresh derivation.
    pub fn from_text(text: &str, zech: Arc<ZechTable>) -> std::result::Result<Self, FormatError> {
        let mut fields = text.split_whitespace();
        if fields.next() != Some("ctx") || fields.next() != Some("v1") {
            return Err(FormatError::new("missing 'ctx v1' header"));
        }
        let (mut n, mut t, mut p, mut f, mut seed) = (None, None, None, None, None);
        for kv in fields {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| FormatError::new(format!("bad field {kv:?}")))?;
            match k {
                "n" => n = v.parse::<usize>().ok(),
                "t" => t = v.parse::<u64>().ok(),
                "p" => p = Some(BinPoly::parse(v)?),
                "f" => f = Some(BinPoly::parse(v)?),
                "seed" => seed = Some(v.to_string()),
                _ => return Err(FormatError::new(format!("unknown field {k:?}"))),
            }
        }
        let (n, t, p, f, seed) = match (n, t, p, f, seed) {
            (Some(n), Some(t), Some(p), Some(f), Some(s)) => (n, t, p, f, s),
            _ => return Err(FormatError::new("context record is missing fields")),
        };
        let seed = BitVector::from_hex(n, &seed)?;
        let ctx = CycleCtx::new(&p, t, zech).map_err(|e| FormatError::new(e.to_string()))?;
        if ctx.f != f || ctx.seed != seed || ctx.n != n {
            return Err(FormatError::new("context record disagrees with its own derivation"));
        }
        Ok(ctx)
    }
}

/// Primitive polynomials of degree `n` in increasing coefficient order.
pub fn primitive_polys(n: usize) -> impl Iterator<Item = BinPoly> {
    let factors = mersenne_factors(n).unwrap_or_default();
    let top = if n < 63 { 1u64 << (n - 1) } else { 0 };
    (0..top).filter_map(move |mid| {
        let p = BinPoly::from_u64((1u64 << n) | (mid << 1) | 1);
        is_primitive(&p, &factors).ok()?.then_some(p)
    })
}

/// A primitive `p` of degree `n` whose `t`-decimation has characteristic
/// polynomial `f`; candidates are scanned in increasing coefficient order
/// and at most `budget` of them are tried.
pub fn find_associated_primitive(f: &BinPoly, t: u64, budget: usize) -> Result<BinPoly> {
    let n = f.deg();
    if n == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    if n >= 63 || mersenne_factors(n).is_none() {
        return Err(Error::UnsupportedDegree(n));
    }
    let tb = BigUint::from(t);
    for p in primitive_polys(n).take(budget) {
        if associated_irreducible(&p, &tb)?.f == *f {
            return Ok(p);
        }
    }
    Err(Error::NotFound(format!(
        "no primitive associate of {} for t={t} within {budget} candidates",
        f.to_text()
    )))
}
