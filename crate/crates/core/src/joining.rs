//! Cycle joining: spanning trees of the adjacency graph become de Bruijn
//! sequences and explicit feedback functions. Also covers LFSRs whose
//! characteristic polynomial is a product of distinct irreducibles.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::bits::{BitMatrix, BitSeq, BitVector};
use crate::cycles::{Cycle, CycleCtx, CyclePos};
use crate::error::{Error, FormatError, Result};
use crate::exp::ExpInt;
use crate::gf2poly::{lfsr_sequence, BinPoly};
use crate::graph::SpanningTree;

/// Largest order that [`GenMode::Materialize`] accepts.
pub const MATERIALIZE_MAX_N: usize = 26;

/// A monomial: sorted variable indices, the empty list being the constant 1.
pub type Monomial = Vec<u16>;

/// Algebraic normal form of a Boolean function of `x_0, ..., x_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Anf {
    n: usize,
    monomials: BTreeSet<Monomial>,
}

impl Anf {
    pub fn zero(n: usize) -> Self {
        Anf {
            n,
            monomials: BTreeSet::new(),
        }
    }

    /// XOR-merges the given monomials; pairs cancel.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(n: usize, monos: I) -> Self {
        let mut a = Anf::zero(n);
        for mut m in monos {
            m.sort_unstable();
            m.dedup();
            a.toggle(m);
        }
        a
    }

    /// `h = Σ c_i x_i` for `f = x^n + Σ c_i x^i`.
    pub fn linear_from_poly(f: &BinPoly) -> Self {
        let n = f.deg();
        Anf::from_monomials(n, (0..n).filter(|&i| f.coeff(i)).map(|i| vec![i as u16]))
    }

    /// `∏_{i=1}^{n-1} (x_i + v_i + 1)`, the indicator of `tail(x) = tail`.
    pub fn tail_indicator(n: usize, tail: &BitVector) -> Self {
        assert_eq!(tail.len() + 1, n);
        let ones: Vec<u16> = tail.ones().map(|i| i as u16 + 1).collect();
        let zeros: Vec<u16> = (0..n - 1).filter(|&i| !tail.get(i)).map(|i| i as u16 + 1).collect();
        assert!(zeros.len() < 32, "indicator expansion too large");
        let mut out = Anf::zero(n);
        for mask in 0u64..(1 << zeros.len()) {
            let mut m = ones.clone();
            m.extend(
                zeros
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &z)| z),
            );
            m.sort_unstable();
            out.monomials.insert(m);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &[u16]) -> bool {
        self.monomials.contains(m)
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Anf) {
        for m in &other.monomials {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &Anf) -> Anf {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Largest monomial size (`0` for constants and the zero function).
    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &BitVector) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.iter().all(|&i| x.get(i as usize)))
    }

    /// Truth table indexed by the packed input (bit `i` = `x_i`).
    pub fn truth_table(&self) -> Vec<bool> {
        assert!(self.n <= 24);
        (0..1u64 << self.n)
            .map(|v| {
                self.monomials
                    .iter()
                    .fold(false, |acc, m| acc ^ m.iter().all(|&i| v >> i & 1 == 1))
            })
            .collect()
    }

    /// Linear part `Σ c_i x_i`, when the function is linear without constant.
    pub fn linear_mask(&self) -> Option<u64> {
        if self.n > 64 {
            return None;
        }
        let mut mask = 0u64;
        for m in &self.monomials {
            if m.len() != 1 {
                return None;
            }
            mask |= 1 << m[0];
        }
        Some(mask)
    }

    /// Parses `"x0 + x1*x3"`; `"0"` and `"1"` are accepted.
    pub fn parse(text: &str, n: usize) -> std::result::Result<Anf, FormatError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Anf::zero(n));
        }
        let mut monos = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term == "1" {
                monos.push(Vec::new());
                continue;
            }
            let mut m = Vec::new();
            for factor in term.split(['*', '.']) {
                let f = factor.trim();
                let idx: u16 = f
                    .strip_prefix('x')
                    .and_then(|d| d.trim_start_matches('_').parse().ok())
                    .ok_or_else(|| FormatError::new(format!("bad ANF factor {f:?}")))?;
                if idx as usize >= n {
                    return Err(FormatError::new(format!("variable x{idx} out of range for n={n}")));
                }
                m.push(idx);
            }
            monos.push(m);
        }
        Ok(Anf::from_monomials(n, monos))
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Canonical ANF plus the tail-indicator product of every given state.
pub fn join_feedback(h: &Anf, states: &[BitVector]) -> Anf {
    let mut out = h.clone();
    for s in states {
        out.add_assign(&Anf::tail_indicator(h.n(), &s.tail()));
    }
    out
}

/// A feedback function kept as a base ANF plus tail indicators, so that
/// large orders never expand the indicator products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeedbackFn {
    base: Anf,
    tails: BTreeSet<BitVector>,
}

impl FeedbackFn {
    pub fn new(base: Anf) -> Self {
        FeedbackFn {
            base,
            tails: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base(&self) -> &Anf {
        &self.base
    }

    pub fn tails(&self) -> impl Iterator<Item = &BitVector> {
        self.tails.iter()
    }

    /// Adds the indicator of `tail`; adding it twice cancels.
    pub fn toggle_tail(&mut self, tail: BitVector) {
        assert_eq!(tail.len() + 1, self.n());
        if !self.tails.remove(&tail) {
            self.tails.insert(tail);
        }
    }

    pub fn eval(&self, x: &BitVector) -> bool {
        self.base.eval(x) ^ self.tails.contains(&x.tail())
    }

    /// Full expansion; refuses when it would exceed `max_monomials`.
    pub fn to_anf(&self, max_monomials: usize) -> Result<Anf> {
        let mut out = self.base.clone();
        for t in &self.tails {
            let zeros = t.len() - t.count_ones();
            if zeros >= 63 || (1usize << zeros) > max_monomials {
                return Err(Error::Resource(format!("indicator expands to 2^{zeros} monomials")));
            }
            out.add_assign(&Anf::tail_indicator(self.n(), t));
        }
        if out.len() > max_monomials {
            return Err(Error::Resource(format!("{} monomials", out.len())));
        }
        Ok(out)
    }

    /// Algebraic degree without expanding the indicators.
    ///
    /// The coefficient of `x_S`, `S ⊆ {1..n-1}`, in the indicator sum is the
    /// parity of `#{tails with no one outside S}`; degrees are searched from
    /// `n - 1` down by the size of the complement of `S`.
    pub fn degree(&self) -> Result<usize> {
        let n = self.n();
        let with_x0 = self
            .base
            .monomials()
            .filter(|m| m.first() == Some(&0))
            .map(Vec::len)
            .max()
            .unwrap_or(0);
        if self.tails.is_empty() {
            return Ok(self.base.degree());
        }
        let base_deg = self.base.degree();
        let tails: Vec<Vec<usize>> = self.tails.iter().map(|t| t.ones().map(|i| i + 1).collect()).collect();
        let mut budget: u64 = 50_000_000;
        for c in 0..n {
            let size = n - 1 - c;
            if size < with_x0 {
                return Ok(with_x0);
            }
            let mut found = false;
            for_each_combination(n - 1, c, &mut |comp| {
                if budget == 0 {
                    return false;
                }
                budget -= 1;
                // comp holds 0-based positions of the variables x_1..x_{n-1}
                let outside = |v: usize| comp.binary_search(&(v - 1)).is_ok();
                let count = tails.iter().filter(|t| !t.iter().any(|&v| outside(v))).count();
                let mut bit = count % 2 == 1;
                if size <= base_deg {
                    let s: Vec<u16> = (1..n).filter(|&v| !outside(v)).map(|v| v as u16).collect();
                    bit ^= self.base.contains(&s);
                }
                if bit {
                    found = true;
                    return false;
                }
                true
            });
            if found {
                return Ok(size.max(with_x0));
            }
            if budget == 0 {
                return Err(Error::Budget("degree search exceeded its budget".into()));
            }
        }
        Ok(with_x0)
    }

    /// Symbolic text: the base ANF followed by `[tail=..]` indicator terms.
    pub fn to_text(&self) -> String {
        let mut out = self.base.to_string();
        for t in &self.tails {
            out.push_str(&format!(" + [tail={t}]"));
        }
        out
    }
}

/// Calls `f` on each `k`-subset of `0..n` (as sorted indices) until it
/// returns `false`.
fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    'outer: loop {
        if !f(&idx) {
            return;
        }
        for i in (0..k).rev() {
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return;
    }
}

/// The joined feedback function of a spanning tree over `Ω(f)`.
pub fn tree_feedback(ctx: &CycleCtx, tree: &SpanningTree) -> Result<FeedbackFn> {
    if !tree.is_valid() || tree.vertices != ctx.t() as usize + 1 {
        return Err(Error::Domain("not a spanning tree of the adjacency graph".into()));
    }
    let mut fb = FeedbackFn::new(Anf::linear_from_poly(ctx.f()));
    for pair in tree.conjugate_pairs(ctx)? {
        fb.toggle_tail(pair.left.state.tail());
    }
    Ok(fb)
}

/// How [`generate_debruijn`] delivers its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    Materialize,
    Stream,
}

pub enum Generated {
    Sequence(BitSeq),
    Stream(BitStream),
}

/// A resumable bit source running a feedback function.
#[derive(Clone, Debug)]
pub struct BitStream {
    fb: FeedbackFn,
    state: BitVector,
}

impl BitStream {
    pub fn resume(fb: FeedbackFn, state: BitVector) -> Result<Self> {
        if state.len() != fb.n() {
            return Err(Error::Domain("state length differs from the order".into()));
        }
        Ok(BitStream { fb, state })
    }

    /// The current state; passing it to [`BitStream::resume`] continues the
    /// stream from here.
    pub fn state(&self) -> &BitVector {
        &self.state
    }

    pub fn feedback(&self) -> &FeedbackFn {
        &self.fb
    }

    pub fn next_bit(&mut self) -> bool {
        let out = self.state.get(0);
        let fb = self.fb.eval(&self.state);
        let mut next = BitVector::from_bools(self.state.iter().skip(1));
        next.push(fb);
        self.state = next;
        out
    }

    pub fn next_block(&mut self, len: usize) -> BitVector {
        BitVector::from_bools((0..len).map(|_| self.next_bit()))
    }
}

/// Runs `fb` for `2^n` steps from the zero state with a successor table.
pub fn materialize(fb: &FeedbackFn) -> Result<BitSeq> {
    let n = fb.n();
    if n > MATERIALIZE_MAX_N {
        return Err(Error::Resource(format!("order {n} exceeds the materialization cap")));
    }
    let mask = fb.base().linear_mask();
    let mut tail_set = vec![0u64; (1usize << (n - 1)).div_ceil(64)];
    for t in fb.tails() {
        let v = t.to_u64() as usize;
        tail_set[v / 64] |= 1 << (v % 64);
    }
    let len = 1usize << n;
    let mut out = BitVector::zeros(0);
    let mut s = 0u64;
    for i in 0..len {
        if i > 0 && s == 0 {
            return Err(Error::Domain(format!("sequence closes after {i} bits")));
        }
        out.push(s & 1 == 1);
        let lin = match mask {
            Some(m) => (s & m).count_ones() & 1 == 1,
            None => fb.base().eval(&BitVector::from_u64(n, s)),
        };
        let tail = (s >> 1) as usize;
        let bit = lin ^ (tail_set[tail / 64] >> (tail % 64) & 1 == 1);
        s = (s >> 1) | ((bit as u64) << (n - 1));
    }
    if s != 0 {
        return Err(Error::Domain("sequence does not return to the zero state".into()));
    }
    Ok(BitSeq::new(out))
}

/// The de Bruijn sequence of a spanning tree, starting from `0^n`.
pub fn generate_debruijn(ctx: &CycleCtx, tree: &SpanningTree, mode: GenMode) -> Result<Generated> {
    let fb = tree_feedback(ctx, tree)?;
    match mode {
        GenMode::Materialize => Ok(Generated::Sequence(materialize(&fb)?)),
        GenMode::Stream => {
            let n = fb.n();
            Ok(Generated::Stream(BitStream::resume(fb, BitVector::zeros(n))?))
        }
    }
}

/// Components of an LFSR with characteristic polynomial `∏ f_i`.
#[derive(Clone, Debug)]
pub struct ProductCtx {
    comps: Vec<CycleCtx>,
    n: usize,
    f: BinPoly,
    /// Rows: component basis states mapped to product states.
    p: BitMatrix,
    p_inv: BitMatrix,
    /// Component states of `(1, 0, ..., 0)`.
    a: Vec<BitVector>,
    gamma: Vec<Option<ExpInt>>,
}

/// A cycle of `Ω(∏ f_i)`: one component cycle per factor and the relative
/// shifts `ℓ_i`, normalized so the first nonzero component has shift 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductLabel {
    pub parts: Vec<Cycle>,
    pub shifts: Vec<u64>,
}

impl fmt::Display for ProductLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .parts
            .iter()
            .zip(&self.shifts)
            .enumerate()
            .filter_map(|(i, (c, s))| match c {
                Cycle::Zero => None,
                Cycle::U(j) if *s == 0 => Some(format!("u{}_{j}", i + 1)),
                Cycle::U(j) => Some(format!("L^{s} u{}_{j}", i + 1)),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "[0]")
        } else {
            write!(f, "[{}]", terms.join(" + "))
        }
    }
}

impl ProductCtx {
    pub fn new(comps: Vec<CycleCtx>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::Domain("no components".into()));
        }
        for (i, a) in comps.iter().enumerate() {
            if comps[..i].iter().any(|b| b.f() == a.f()) {
                return Err(Error::Domain(format!("factor {} repeats", a.f().to_text())));
            }
        }
        let f = comps.iter().fold(BinPoly::one(), |acc, c| acc.mul(c.f()));
        let n = f.deg();
        let mut rows = Vec::with_capacity(n);
        for c in &comps {
            for j in 0..c.n() {
                rows.push(lfsr_sequence(c.f(), &BitVector::basis(c.n(), j), n));
            }
        }
        let p = BitMatrix::from_rows(rows);
        let p_inv = p
            .inverse()
            .ok_or_else(|| Error::Domain("state-combination matrix is singular".into()))?;
        let mut ctx = ProductCtx {
            comps,
            n,
            f,
            p,
            p_inv,
            a: Vec::new(),
            gamma: Vec::new(),
        };
        ctx.a = ctx.split(&BitVector::unit(n));
        ctx.gamma = ctx
            .a
            .iter()
            .zip(&ctx.comps)
            .map(|(a, c)| {
                if a.is_zero() {
                    Ok(None)
                } else {
                    c.state_to_exponent(a).map(Some)
                }
            })
            .collect::<Result<_>>()?;
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &BinPoly {
        &self.f
    }

    pub fn components(&self) -> &[CycleCtx] {
        &self.comps
    }

    /// `(v_1, ..., v_s)` with `v = (v_1, ..., v_s)·P`.
    pub fn split(&self, v: &BitVector) -> Vec<BitVector> {
        let w = self.p_inv.apply(v);
        let mut out = Vec::with_capacity(self.comps.len());
        let mut at = 0;
        for c in &self.comps {
            out.push(BitVector::from_bools((at..at + c.n()).map(|i| w.get(i))));
            at += c.n();
        }
        out
    }

    pub fn combine(&self, parts: &[BitVector]) -> BitVector {
        let w = BitVector::from_bools(parts.iter().flat_map(|p| p.iter().collect::<Vec<_>>()));
        self.p.apply(&w)
    }

    fn label_from_positions(&self, pos: &[Option<CyclePos>]) -> ProductLabel {
        let mut parts = Vec::with_capacity(pos.len());
        let mut shifts = vec![0u64; pos.len()];
        // shift applied to every component, known modulo `step`
        let mut m = BigInt::zero();
        let mut step: Option<BigInt> = None;
        for (i, p) in pos.iter().enumerate() {
            let p = match p {
                Some(p) if p.cycle != Cycle::Zero => p,
                _ => {
                    parts.push(Cycle::Zero);
                    continue;
                }
            };
            parts.push(p.cycle);
            let e = BigInt::from(self.comps[i].e().clone());
            let o = BigInt::from(p.offset.clone());
            match &step {
                None => {
                    m = -o;
                    step = Some(e);
                }
                Some(l) => {
                    let cur = (&o + &m).mod_floor(&e);
                    let g = l.gcd(&e);
                    let target = cur.mod_floor(&g);
                    // l·q ≡ target - cur (mod e)
                    let eg = &e / &g;
                    let lg = (l / &g).mod_floor(&eg);
                    let rhs = ((&target - &cur) / &g).mod_floor(&eg);
                    let q = if eg.is_one() {
                        BigInt::zero()
                    } else {
                        let inv = lg.extended_gcd(&eg).x.mod_floor(&eg);
                        (rhs * inv).mod_floor(&eg)
                    };
                    m += l * q;
                    shifts[i] = target.to_u64().unwrap();
                    step = Some(l.lcm(&e));
                }
            }
        }
        ProductLabel { parts, shifts }
    }

    /// The cycle containing `v`, read off the component positions.
    pub fn label_of_state(&self, v: &BitVector) -> Result<ProductLabel> {
        let pos = self
            .split(v)
            .iter()
            .zip(&self.comps)
            .map(|(s, c)| {
                if s.is_zero() {
                    Ok(None)
                } else {
                    c.position_of_state(s).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.label_from_positions(&pos))
    }

    /// Period of the cycle with this label.
    pub fn period(&self, label: &ProductLabel) -> BigUint {
        label
            .parts
            .iter()
            .zip(&self.comps)
            .filter(|(c, _)| **c != Cycle::Zero)
            .fold(BigUint::one(), |acc, (_, ctx)| acc.lcm(ctx.e()))
    }
}

/// Every cycle of `Ω(∏ f_i)` with its period.
pub fn product_cycle_structure(pctx: &ProductCtx) -> Vec<(ProductLabel, BigUint)> {
    let mut labels = vec![ProductLabel {
        parts: Vec::new(),
        shifts: Vec::new(),
    }];
    let mut steps: Vec<Option<BigUint>> = vec![None];
    for c in pctx.components() {
        let e = c.e().clone();
        let mut next = Vec::new();
        let mut next_steps = Vec::new();
        for (lab, st) in labels.iter().zip(&steps) {
            let mut z = lab.clone();
            z.parts.push(Cycle::Zero);
            z.shifts.push(0);
            next.push(z);
            next_steps.push(st.clone());
            for j in 0..c.t() {
                let (range, new_step) = match st {
                    None => (1u64, e.clone()),
                    Some(l) => (l.gcd(&e).to_u64().unwrap(), l.lcm(&e)),
                };
                for s in 0..range {
                    let mut x = lab.clone();
                    x.parts.push(Cycle::U(j));
                    x.shifts.push(s);
                    next.push(x);
                    next_steps.push(Some(new_step.clone()));
                }
            }
        }
        labels = next;
        steps = next_steps;
    }
    labels
        .into_iter()
        .map(|l| {
            let p = pctx.period(&l);
            (l, p)
        })
        .collect()
}

/// The conjugate `v̂ = v + (1, 0, ..., 0)` and its cycle, located through
/// the component Zech tables: `b_i = φ(α_i^{γ_i + τ_i(j_i - γ_i)})`.
pub fn product_conjugate(pctx: &ProductCtx, v: &BitVector) -> Result<(BitVector, ProductLabel)> {
    let parts = pctx.split(v);
    let mut states = Vec::with_capacity(parts.len());
    let mut positions = Vec::with_capacity(parts.len());
    for (i, (vi, c)) in parts.iter().zip(pctx.components()).enumerate() {
        let exp: Option<ExpInt> = match (&pctx.gamma[i], vi.is_zero()) {
            (None, true) => None,
            (None, false) => Some(c.state_to_exponent(vi)?),
            (Some(g), true) => Some(g.clone()),
            (Some(g), false) => {
                let j = c.state_to_exponent(vi)?;
                if &j == g {
                    None
                } else {
                    let d = c.ring().sub(&j, g);
                    let tau = c.zech().get(&d).ok_or_else(|| Error::MissingEntry(d.to_string()))?;
                    Some(c.ring().add(g, &tau))
                }
            }
        };
        match exp {
            None => {
                states.push(BitVector::zeros(c.n()));
                positions.push(None);
            }
            Some(k) => {
                let pos = c.position_of_exponent(&k);
                states.push(pos.state.clone());
                positions.push(Some(pos));
            }
        }
    }
    let hat = pctx.combine(&states);
    Ok((hat, pctx.label_from_positions(&positions)))
}

/// Breadth-first spanning tree over the cycles of a product LFSR, found by
/// scanning every state; returns the tail of one conjugate pair per edge.
pub fn product_tree_tails(pctx: &ProductCtx) -> Result<Vec<BitVector>> {
    let n = pctx.n();
    if n > 20 {
        return Err(Error::Resource(format!("order {n} is too large for a state scan")));
    }
    let cycles = product_cycle_structure(pctx);
    let index = |l: &ProductLabel| cycles.iter().position(|(c, _)| c == l);
    let mut adj: Vec<Vec<(usize, BitVector)>> = vec![Vec::new(); cycles.len()];
    for v in 0..1u64 << n {
        let s = BitVector::from_u64(n, v);
        if s.get(0) {
            continue;
        }
        let a = index(&pctx.label_of_state(&s)?).ok_or_else(|| Error::Domain("unknown cycle".into()))?;
        let (_, lb) = product_conjugate(pctx, &s)?;
        let b = index(&lb).ok_or_else(|| Error::Domain("unknown cycle".into()))?;
        if a != b {
            adj[a].push((b, s.tail()));
            adj[b].push((a, s.tail()));
        }
    }
    let mut seen = vec![false; cycles.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut tails = Vec::new();
    while let Some(u) = queue.pop_front() {
        for (v, tail) in &adj[u] {
            if !seen[*v] {
                seen[*v] = true;
                tails.push(tail.clone());
                queue.push_back(*v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        let missing = (0..cycles.len()).filter(|&i| !seen[i]).collect();
        return Err(Error::Disconnected(missing));
    }
    Ok(tails)
}

impl FromStr for Anf {
    type Err = FormatError;

    /// Infers `n` from the largest variable index.
    fn from_str(s: &str) -> std::result::Result<Self, FormatError> {
        let max = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|w| w.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()))
            .max()
            .map_or(1, |m| m + 1);
        Anf::parse(s, max)
    }
}
