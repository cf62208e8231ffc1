//! Zech's logarithm tables: `1 + α^k = α^{τ(k)}` for a primitive root `α`.
//!
//! Entries are keyed by cyclotomic coset; the doubling law
//! `τ(2k) = 2τ(k)` makes one value per coset enough. Small fields keep a
//! flat array over all exponents, larger ones a sparse per-leader map.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, FormatError, Result};
use crate::exp::{coset_leader_u64, rotl_u64, ExpInt, ExpRing};
use crate::gf2poly::{associated_irreducible, BinPoly};

/// Largest degree stored as a flat array over all exponents.
pub const DENSE_MAX_N: usize = 24;
/// Default cap for exhaustive state enumeration.
pub const BRUTEFORCE_CAP: usize = 26;

/// How a table entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Seed,
    Flip,
    Inv,
    Double,
    Chain,
    Subfield,
    Bruteforce,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Seed => "seed",
            Provenance::Flip => "flip",
            Provenance::Inv => "inv",
            Provenance::Double => "double",
            Provenance::Chain => "chain",
            Provenance::Subfield => "subfield",
            Provenance::Bruteforce => "bruteforce",
        }
    }

    fn code(self) -> u8 {
        self as u8 + 1
    }

    fn from_code(c: u8) -> Provenance {
        const ALL: [Provenance; 7] = [
            Provenance::Seed,
            Provenance::Flip,
            Provenance::Inv,
            Provenance::Double,
            Provenance::Chain,
            Provenance::Subfield,
            Provenance::Bruteforce,
        ];
        ALL[(c - 1) as usize]
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = FormatError;
    fn from_str(s: &str) -> std::result::Result<Self, FormatError> {
        Ok(match s {
            "seed" => Provenance::Seed,
            "flip" => Provenance::Flip,
            "inv" => Provenance::Inv,
            "double" => Provenance::Double,
            "chain" => Provenance::Chain,
            "subfield" => Provenance::Subfield,
            "bruteforce" => Provenance::Bruteforce,
            other => return Err(FormatError::new(format!("unknown provenance {other:?}"))),
        })
    }
}

#[derive(Clone)]
struct Dense {
    n: u32,
    m: u64,
    tau: Vec<u32>,
    prov: Vec<u8>,
    /// Every exponent with a known value, in insertion order.
    known: Vec<u32>,
}

#[derive(Clone)]
enum Store {
    Dense(Dense),
    Sparse(BTreeMap<ExpInt, (ExpInt, Provenance)>),
}

/// A partial or complete Zech logarithm table relative to a primitive root.
#[derive(Clone)]
pub struct ZechTable {
    ring: ExpRing,
    poly: Option<BinPoly>,
    store: Store,
    /// Number of exponents with a known value (sparse store only).
    sparse_known: BigUint,
    chain_steps: u64,
}

/// Coverage summary of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub known_elements: BigUint,
    pub total_elements: BigUint,
    pub known_cosets: usize,
    pub chain_steps: u64,
}

impl ZechTable {
    /// An empty table for degree `n`.
    pub fn new(n: usize, poly: Option<BinPoly>) -> Self {
        let ring = ExpRing::new(n);
        let store = if n <= DENSE_MAX_N {
            let m = (1u64 << n) - 1;
            Store::Dense(Dense {
                n: n as u32,
                m,
                tau: vec![0; m as usize],
                prov: vec![0; m as usize],
                known: Vec::new(),
            })
        } else {
            Store::Sparse(BTreeMap::new())
        };
        ZechTable {
            ring,
            poly,
            store,
            sparse_known: BigUint::zero(),
            chain_steps: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn ring(&self) -> &ExpRing {
        &self.ring
    }

    pub fn poly(&self) -> Option<&BinPoly> {
        self.poly.as_ref()
    }

    pub fn known_elements(&self) -> BigUint {
        match &self.store {
            Store::Dense(d) => BigUint::from(d.known.len()),
            Store::Sparse(_) => self.sparse_known.clone(),
        }
    }

    /// True when every exponent in `[1, 2^n - 2]` has a value.
    pub fn is_complete(&self) -> bool {
        self.known_elements() + 2u32 == BigUint::one() << self.n()
    }

    pub fn coverage(&self) -> Coverage {
        Coverage {
            known_elements: self.known_elements(),
            total_elements: self.ring.modulus() - 1u32,
            known_cosets: self.leader_count(),
            chain_steps: self.chain_steps,
        }
    }

    /// Number of cosets with a stored value.
    pub fn leader_count(&self) -> usize {
        match &self.store {
            Store::Dense(d) => d.known.iter().filter(|&&k| is_leader_u64(k as u64, d.n)).count(),
            Store::Sparse(map) => map.len(),
        }
    }

    /// `τ(k)`, or `None` when the coset of `k` is unknown or `k ≡ 0`.
    pub fn get(&self, k: &ExpInt) -> Option<ExpInt> {
        match &self.store {
            Store::Dense(d) => {
                let k = (k % self.ring.modulus()).to_u64()?;
                d.get(k).map(BigUint::from)
            }
            Store::Sparse(map) => {
                let k = self.ring.reduce(k);
                if k.is_zero() {
                    return None;
                }
                let (leader, s, _) = self.ring.coset_with_shift(&k);
                map.get(&leader).map(|(v, _)| self.ring.rotl(v, s))
            }
        }
    }

    /// `τ(k)` for machine-sized exponents.
    pub fn get_u64(&self, k: u64) -> Option<u64> {
        match &self.store {
            Store::Dense(d) => d.get(k % d.m),
            Store::Sparse(_) => self.get(&BigUint::from(k)).and_then(|v| v.to_u64()),
        }
    }

    /// Provenance recorded at the coset leader of `k`.
    pub fn provenance(&self, k: &ExpInt) -> Option<Provenance> {
        let (leader, _, _) = self.ring.coset_with_shift(k);
        match &self.store {
            Store::Dense(d) => {
                let l = leader.to_u64()?;
                let c = *d.prov.get(l as usize)?;
                (c != 0).then(|| Provenance::from_code(c))
            }
            Store::Sparse(map) => map.get(&leader).map(|e| e.1),
        }
    }

    /// Stored entries `(leader, τ(leader), provenance)` sorted by leader.
    pub fn entries(&self) -> Vec<(ExpInt, ExpInt, Provenance)> {
        match &self.store {
            Store::Dense(d) => {
                let mut leaders: Vec<u32> = d
                    .known
                    .iter()
                    .copied()
                    .filter(|&k| is_leader_u64(k as u64, d.n))
                    .collect();
                leaders.sort_unstable();
                leaders
                    .into_iter()
                    .map(|k| {
                        (
                            BigUint::from(k),
                            BigUint::from(d.tau[k as usize]),
                            Provenance::from_code(d.prov[k as usize]),
                        )
                    })
                    .collect()
            }
            Store::Sparse(map) => map.iter().map(|(k, (v, p))| (k.clone(), v.clone(), *p)).collect(),
        }
    }

    /// Records `τ(k) = v` for the whole coset of `k`, without closure.
    /// Returns false when the entry was already present.
    pub fn insert(&mut self, k: &ExpInt, v: &ExpInt, prov: Provenance) -> Result<bool> {
        let k = self.ring.reduce(k);
        let v = self.ring.reduce(v);
        if k.is_zero() || v.is_zero() || k == v {
            return Err(Error::CorruptTable(format!("impossible entry tau({k}) = {v}")));
        }
        match &mut self.store {
            Store::Dense(d) => {
                let mut fresh = Vec::new();
                let before = d.known.len();
                d.put_one(k.to_u64().unwrap(), v.to_u64().unwrap(), prov, &mut fresh)?;
                Ok(d.known.len() > before)
            }
            Store::Sparse(map) => {
                let (leader, s, size) = self.ring.coset_with_shift(&k);
                // k = 2^s leader, so τ(leader) = 2^{-s} v
                let lv = self.ring.rotl(&v, self.ring.n() - s);
                if self.ring.coset(&lv).size != size {
                    return Err(Error::CorruptTable(format!("cosets of {k} and {v} differ in size")));
                }
                if let Some((old, _)) = map.get(&leader) {
                    if *old != lv {
                        return Err(Error::CorruptTable(format!(
                            "tau({leader}) derived as both {old} and {lv}"
                        )));
                    }
                    return Ok(false);
                }
                let p = if s == 0 { prov } else { Provenance::Double };
                map.insert(leader, (lv, p));
                self.sparse_known += size;
                Ok(true)
            }
        }
    }

    /// Inserts `τ(k) = v` and closes the table under Flip and Inv.
    pub fn insert_closed(&mut self, k: &ExpInt, v: &ExpInt, prov: Provenance) -> Result<bool> {
        match &mut self.store {
            Store::Dense(d) => {
                let k = (k % self.ring.modulus()).to_u64().unwrap();
                let v = (v % self.ring.modulus()).to_u64().unwrap();
                let before = d.known.len();
                let mut fresh = Vec::new();
                d.put(k, v, prov, &mut fresh)?;
                Ok(d.known.len() > before)
            }
            Store::Sparse(_) => {
                let mut stack = vec![(self.ring.reduce(k), self.ring.reduce(v), prov)];
                let mut any = false;
                while let Some((k, v, p)) = stack.pop() {
                    if self.insert(&k, &v, p)? {
                        any = true;
                        let m = self.ring.modulus().clone();
                        stack.push((v.clone(), k.clone(), Provenance::Flip));
                        let nk = &m - &k;
                        let nv = self.ring.sub(&v, &k);
                        stack.push((nk, nv, Provenance::Inv));
                    }
                }
                Ok(any)
            }
        }
    }

    /// Writes the table in the `zech v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "zech v1 n={} p={} complete={}\n",
            self.n(),
            self.poly.as_ref().map_or("-".to_string(), BinPoly::to_text),
            self.is_complete() as u8
        );
        for (k, v, p) in self.entries() {
            out.push_str(&format!("{k} {v} {p}\n"));
        }
        out
    }

    /// Parses the `zech v1` text format.
    pub fn from_text(text: &str) -> std::result::Result<Self, FormatError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| FormatError::new("empty table file"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("zech") || parts.next() != Some("v1") {
            return Err(FormatError::new("missing 'zech v1' header"));
        }
        let mut n = None;
        let mut poly = None;
        let mut complete = None;
        for kv in parts {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| FormatError::new(format!("bad header field {kv:?}")))?;
            match key {
                "n" => n = Some(val.parse::<usize>().map_err(|_| FormatError::new("bad n"))?),
                "p" if val == "-" => {}
                "p" => poly = Some(BinPoly::parse(val)?),
                "complete" => complete = Some(val == "1"),
                _ => return Err(FormatError::new(format!("unknown header field {key:?}"))),
            }
        }
        let n = n.ok_or_else(|| FormatError::new("header lacks n="))?;
        if n == 0 {
            return Err(FormatError::new("n must be positive"));
        }
        let mut table = ZechTable::new(n, poly);
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(FormatError::new(format!("bad entry line {line:?}")));
            }
            let k: BigUint = f[0].parse().map_err(|_| FormatError::new("bad leader"))?;
            let v: BigUint = f[1].parse().map_err(|_| FormatError::new("bad value"))?;
            let p: Provenance = f[2].parse()?;
            if table.ring.coset(&k).leader != k {
                return Err(FormatError::new(format!("{k} is not a coset leader")));
            }
            table.insert(&k, &v, p).map_err(|e| FormatError::new(e.to_string()))?;
        }
        if complete == Some(true) && !table.is_complete() {
            return Err(FormatError::new("header claims completeness but entries are missing"));
        }
        Ok(table)
    }
}

impl fmt::Debug for ZechTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ZechTable(n={}, known={}, complete={})",
            self.n(),
            self.known_elements(),
            self.is_complete()
        )
    }
}

#[inline]
fn is_leader_u64(k: u64, n: u32) -> bool {
    let mut cur = k;
    for _ in 1..n {
        cur = rotl_u64(cur, 1, n);
        if cur < k {
            return false;
        }
        if cur == k {
            break;
        }
    }
    true
}

impl Dense {
    #[inline]
    fn get(&self, k: u64) -> Option<u64> {
        match self.tau.get(k as usize) {
            Some(&v) if v != 0 => Some(v as u64),
            _ => None,
        }
    }

    /// Stores one coset; pushes `k` onto `fresh` when new.
    fn put_one(&mut self, k: u64, v: u64, prov: Provenance, fresh: &mut Vec<u64>) -> Result<bool> {
        if k == 0 || v == 0 || k >= self.m || v >= self.m || k == v {
            return Err(Error::CorruptTable(format!("impossible entry tau({k}) = {v}")));
        }
        let cur = self.tau[k as usize];
        if cur != 0 {
            if cur as u64 != v {
                return Err(Error::CorruptTable(format!("tau({k}) derived as both {cur} and {v}")));
            }
            return Ok(false);
        }
        let (leader, _) = coset_leader_u64(k, self.n);
        let (mut a, mut b) = (k, v);
        loop {
            self.tau[a as usize] = b as u32;
            self.prov[a as usize] = if a == leader {
                if a == k {
                    prov.code()
                } else {
                    Provenance::Double.code()
                }
            } else {
                0
            };
            self.known.push(a as u32);
            a = rotl_u64(a, 1, self.n);
            b = rotl_u64(b, 1, self.n);
            if a == k {
                break;
            }
        }
        if b != v {
            return Err(Error::CorruptTable(format!("cosets of {k} and {v} differ in size")));
        }
        fresh.push(k);
        Ok(true)
    }

    /// Stores a coset and everything Flip and Inv derive from it.
    fn put(&mut self, k: u64, v: u64, prov: Provenance, fresh: &mut Vec<u64>) -> Result<()> {
        let m = self.m;
        let mut stack = vec![(k, v, prov)];
        while let Some((k, v, p)) = stack.pop() {
            if self.put_one(k, v, p, fresh)? {
                stack.push((v, k, Provenance::Flip));
                stack.push((m - k, (v + m - k) % m, Provenance::Inv));
            }
        }
        Ok(())
    }

    /// Chaining identity for known `a`, `b`, `a + b`:
    /// `τ(τ(a+b) - τ(b)) = τ(a) + b - τ(b)`.
    #[inline]
    fn chain(&mut self, a: u64, b: u64, fresh: &mut Vec<u64>) -> Result<()> {
        let m = self.m;
        let s = (a + b) % m;
        let ts = self.tau[s as usize] as u64;
        let tb = self.tau[b as usize] as u64;
        let ta = self.tau[a as usize] as u64;
        let target = (ts + m - tb) % m;
        let value = (ta + b + m - tb) % m;
        let cur = self.tau[target as usize];
        if cur == 0 {
            self.put(target, value, Provenance::Chain, fresh)
        } else if cur as u64 != value {
            Err(Error::CorruptTable(format!(
                "tau({target}) derived as both {cur} and {value}"
            )))
        } else {
            Ok(())
        }
    }

    /// Runs the chaining identity to a fixpoint. Every triple of known
    /// exponents `(a, b, a + b)` is visited with one of its cosets' fresh
    /// representatives in some role; doubling covers the scaled copies.
    fn sweep(&mut self, mut work: Vec<u64>, max_steps: Option<u64>, steps: &mut u64) -> Result<bool> {
        let m = self.m;
        let mut idx = 0;
        while idx < work.len() {
            if self.known.len() as u64 == m - 1 {
                return Ok(true);
            }
            if max_steps.is_some_and(|cap| *steps >= cap) {
                return Ok(false);
            }
            let c = work[idx];
            idx += 1;
            *steps += 1;
            let len = self.known.len();
            let mut fresh = Vec::new();
            for xi in 0..len {
                let x = self.known[xi] as u64;
                let s = (c + x) % m;
                if s != 0 && self.tau[s as usize] != 0 {
                    self.chain(c, x, &mut fresh)?;
                    self.chain(x, c, &mut fresh)?;
                }
                if x != c {
                    let d = (c + m - x) % m;
                    if self.tau[d as usize] != 0 {
                        self.chain(x, d, &mut fresh)?;
                    }
                }
            }
            work.extend(fresh);
        }
        Ok(true)
    }
}

/// Exhaustive table: walk the m-sequence states from `(1, 0, ..., 0)`,
/// index each state by position, and read `τ(i)` as the position of
/// `state_i + state_0`.
pub fn zech_bruteforce(p: &BinPoly) -> Result<ZechTable> {
    zech_bruteforce_capped(p, BRUTEFORCE_CAP)
}

pub fn zech_bruteforce_capped(p: &BinPoly, cap: usize) -> Result<ZechTable> {
    let n = p.deg();
    if n == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    if n > cap || n > 32 {
        return Err(Error::Resource(format!(
            "exhaustive table for degree {n} exceeds the cap of {cap}"
        )));
    }
    if !p.coeff(0) {
        return Err(Error::Domain("polynomial is not primitive".into()));
    }
    let m = (1u64 << n) - 1;
    let cmask = p.low_coeffs().to_u64();
    let step = |s: u64| -> u64 { (s >> 1) | ((((s & cmask).count_ones() & 1) as u64) << (n - 1)) };
    let mut pos = vec![u32::MAX; 1usize << n];
    let mut s = 1u64;
    for i in 0..m {
        if pos[s as usize] != u32::MAX {
            return Err(Error::Domain("polynomial is not primitive".into()));
        }
        pos[s as usize] = i as u32;
        s = step(s);
    }
    if s != 1 {
        return Err(Error::Domain("polynomial is not primitive".into()));
    }
    let mut table = ZechTable::new(n, Some(p.clone()));
    match &mut table.store {
        Store::Dense(d) => {
            let mut s = 1u64;
            for i in 0..m {
                if i > 0 {
                    d.tau[i as usize] = pos[(s ^ 1) as usize];
                    d.known.push(i as u32);
                }
                s = step(s);
            }
            for i in 1..m {
                if is_leader_u64(i, n as u32) {
                    d.prov[i as usize] = Provenance::Bruteforce.code();
                }
            }
        }
        Store::Sparse(_) => {
            let mut s = 1u64;
            for i in 0..m {
                if i > 0 && is_leader_u64(i, n as u32) {
                    let v = pos[(s ^ 1) as usize] as u64;
                    table.insert(&BigUint::from(i), &BigUint::from(v), Provenance::Bruteforce)?;
                }
                s = step(s);
            }
        }
    }
    Ok(table)
}

/// For a trinomial `x^n + x^k + 1`, seeds `τ(k) = n` (and `τ(n) = k`).
pub fn zech_seed_trinomial(p: &BinPoly) -> Result<ZechTable> {
    let exps = p.exponents();
    if exps.len() != 3 || exps[0] != 0 {
        return Err(Error::UnsupportedSeed);
    }
    let (k, n) = (exps[1], exps[2]);
    let mut t = ZechTable::new(n, Some(p.clone()));
    t.insert(&BigUint::from(k), &BigUint::from(n), Provenance::Seed)?;
    t.insert(&BigUint::from(n), &BigUint::from(k), Provenance::Flip)?;
    Ok(t)
}

/// Closes a table under Flip `τ(τ(k)) = k`, Inv `τ(-k) = τ(k) - k` and
/// Double `τ(2k) = 2τ(k)`.
pub fn zech_closure(t: &ZechTable) -> Result<ZechTable> {
    let mut out = t.clone();
    let r = t.ring().clone();
    for (k, v, _) in t.entries() {
        out.insert_closed(&v, &k, Provenance::Flip)?;
        out.insert_closed(&r.neg(&k), &r.sub(&v, &k), Provenance::Inv)?;
    }
    Ok(out)
}

/// Applies the chaining identity with the pair `(i, j)`:
/// `τ(τ(i) - τ(j)) = τ(i - j) + j - τ(j)`, then re-closes the table.
///
/// Returns the new `(k, τ(k))` when the target coset was unknown, and
/// `None` when an input is unresolvable or nothing new is learned.
pub fn zech_chain(t: &mut ZechTable, i: &ExpInt, j: &ExpInt) -> Result<Option<(ExpInt, ExpInt)>> {
    let r = t.ring().clone();
    let (i, j) = (r.reduce(i), r.reduce(j));
    if i == j || i.is_zero() || j.is_zero() {
        return Ok(None);
    }
    let d = r.sub(&i, &j);
    let (Some(ti), Some(tj), Some(td)) = (t.get(&i), t.get(&j), t.get(&d)) else {
        return Ok(None);
    };
    let target = r.sub(&ti, &tj);
    let value = r.sub(&r.add(&td, &j), &tj);
    if let Some(known) = t.get(&target) {
        if known != value {
            return Err(Error::CorruptTable(format!(
                "tau({target}) derived as both {known} and {value}"
            )));
        }
        return Ok(None);
    }
    t.insert_closed(&target, &value, Provenance::Chain)?;
    t.chain_steps += 1;
    Ok(Some((target, value)))
}

/// Lifts a degree-`m` table relative to `β = α^r`, `r = (2^n-1)/(2^m-1)`,
/// to degree `n` entries `τ_n(r·j) = r·τ_m(j)`.
pub fn zech_subfield_lift(t_m: &ZechTable, n: usize) -> Result<Vec<(ExpInt, ExpInt)>> {
    let m = t_m.n();
    if !n.is_multiple_of(m) {
        return Err(Error::InvalidSubfield { m, n });
    }
    let big = ExpRing::new(n);
    let r = big.modulus() / t_m.ring().modulus();
    let mut out = Vec::new();
    for (k, _, _) in t_m.entries() {
        for e in t_m.ring().coset_elements(&k) {
            let v = t_m.get(&e).expect("entry of a stored coset");
            out.push((&r * &e, big.reduce(&(&r * v))));
        }
    }
    out.sort();
    Ok(out)
}

/// Options for [`build_zech_table`].
#[derive(Clone, Debug, Default)]
pub struct ZechBudget {
    /// Extra `(k, τ(k))` seeds, required for non-trinomials.
    pub seeds: Vec<(ExpInt, ExpInt)>,
    /// Fill in entries from every proper subfield when chaining stalls.
    pub subfield: bool,
    /// Cap on processed work items in the chaining sweep.
    pub max_chain_steps: Option<u64>,
}

/// Seeds, closes and chains a table for the primitive `p`; with
/// `budget.subfield`, also lifts entries from proper subfields and
/// resumes chaining. Incompleteness is reported, not an error.
pub fn build_zech_table(p: &BinPoly, budget: &ZechBudget) -> Result<ZechTable> {
    let n = p.deg();
    let mut t = match zech_seed_trinomial(p) {
        Ok(t) => t,
        Err(Error::UnsupportedSeed) if !budget.seeds.is_empty() => ZechTable::new(n, Some(p.clone())),
        Err(e) => return Err(e),
    };
    for (k, v) in &budget.seeds {
        t.insert(k, v, Provenance::Seed)?;
    }
    t = zech_closure(&t)?;
    let mut steps = 0u64;
    if let Store::Dense(d) = &mut t.store {
        let work: Vec<u64> = d.known.iter().map(|&k| k as u64).collect();
        d.sweep(work, budget.max_chain_steps, &mut steps)?;
    }
    t.chain_steps = steps;
    if budget.subfield && !t.is_complete() {
        for m in (1..n).filter(|m| n.is_multiple_of(*m) && *m >= 2) {
            let r = ExpRing::new(n).modulus() / ExpRing::new(m).modulus();
            let q = associated_irreducible(p, &r)?.f;
            if m > BRUTEFORCE_CAP {
                continue;
            }
            let sub = zech_bruteforce(&q)?;
            let mut fresh = Vec::new();
            for (k, v) in zech_subfield_lift(&sub, n)? {
                match &mut t.store {
                    Store::Dense(d) => {
                        let (k, v) = (k.to_u64().unwrap(), v.to_u64().unwrap());
                        d.put(k, v, Provenance::Subfield, &mut fresh)?;
                    }
                    Store::Sparse(_) => {
                        t.insert_closed(&k, &v, Provenance::Subfield)?;
                    }
                }
            }
            if let Store::Dense(d) = &mut t.store {
                if !fresh.is_empty() {
                    d.sweep(fresh, budget.max_chain_steps, &mut steps)?;
                }
            }
        }
        t.chain_steps = steps;
    }
    Ok(t)
}

/// `τ(k)` via the coset leader: if `k = 2^s·leader`, `τ(k) = 2^s·τ(leader)`.
pub fn zech_resolve(t: &ZechTable, k: &ExpInt) -> Result<ExpInt> {
    t.get(k).ok_or_else(|| Error::MissingEntry(k.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn p(s: &str) -> BinPoly {
        s.parse().unwrap()
    }

    #[test]
    fn bruteforce_small_fields() {
        let t = zech_bruteforce(&p("x^4+x+1")).unwrap();
        let got: Vec<u64> = (1..15).map(|k| t.get_u64(k).unwrap()).collect();
        assert_eq!(got, vec![4, 8, 14, 1, 10, 13, 9, 2, 7, 5, 12, 11, 6, 3]);
        assert!(t.is_complete());
        let t10 = zech_bruteforce(&p("n=10;{3}")).unwrap();
        assert_eq!(t10.get_u64(3), Some(10));
        assert_eq!(t10.get_u64(341), Some(682));
        let t5 = zech_bruteforce(&p("x^5+x^2+1")).unwrap();
        assert_eq!(t5.get_u64(7), Some(22));
        assert_eq!(t5.get_u64(21), Some(25));
    }

    #[test]
    fn bruteforce_rejects() {
        assert!(matches!(
            zech_bruteforce_capped(&p("n=30;{1}"), 26),
            Err(Error::Resource(_))
        ));
        assert!(zech_bruteforce(&p("x^4+x^3+x^2+x+1")).is_err());
    }

    #[test]
    fn trinomial_seeds() {
        let t = zech_seed_trinomial(&p("n=31;{3}")).unwrap();
        assert_eq!(t.get(&b(3)), Some(b(31)));
        assert_eq!(t.get(&b(6)), Some(b(62)));
        let t = zech_seed_trinomial(&p("n=127;{1}")).unwrap();
        assert_eq!(t.get(&b(1)), Some(b(127)));
        assert_eq!(t.get(&b(2)), Some(b(254)));
        let t = zech_seed_trinomial(&p("n=300;{7}")).unwrap();
        assert_eq!(t.get(&b(7)), Some(b(300)));
        assert!(matches!(
            zech_seed_trinomial(&p("x^4+x^3+x^2+x+1")),
            Err(Error::UnsupportedSeed)
        ));
    }

    #[test]
    fn closure_from_single_seed() {
        let mut t = ZechTable::new(10, None);
        t.insert(&b(3), &b(10), Provenance::Seed).unwrap();
        let c = zech_closure(&t).unwrap();
        assert_eq!(c.known_elements(), b(60));
        let mut leaders: Vec<u64> = c.entries().iter().map(|e| e.0.to_u64().unwrap()).collect();
        leaders.sort();
        assert_eq!(leaders, vec![3, 5, 7, 127, 255, 383]);
        let again = zech_closure(&c).unwrap();
        assert_eq!(again.entries(), c.entries());

        let mut t4 = ZechTable::new(4, None);
        t4.insert(&b(3), &b(14), Provenance::Seed).unwrap();
        let c4 = zech_closure(&t4).unwrap();
        let brute = zech_bruteforce(&p("x^4+x+1")).unwrap();
        for k in [14u64, 6, 12, 1] {
            assert_eq!(c4.get_u64(k), brute.get_u64(k), "k={k}");
        }
    }

    #[test]
    fn sparse_closure_matches_dense() {
        // the same seed through the big-integer store
        let mut s = ZechTable::new(31, None);
        s.insert_closed(&b(3), &b(31), Provenance::Seed).unwrap();
        assert_eq!(s.get(&b(31)), Some(b(3)));
        let m = s.ring().modulus().clone();
        assert_eq!(s.get(&(&m - 3u32)), Some(b(28)));
        for (k, v, _) in s.entries() {
            assert_eq!(s.get(&v), Some(k.clone()));
        }
    }

    #[test]
    fn chain_rows() {
        let mut t = ZechTable::new(10, Some(p("n=10;{3}")));
        t.insert_closed(&b(3), &b(10), Provenance::Seed).unwrap();
        assert_eq!(zech_chain(&mut t, &b(12), &b(5)).unwrap(), Some((b(550), b(512))));
        assert_eq!(zech_chain(&mut t, &b(12), &b(5)).unwrap(), None);
        let brute = zech_bruteforce(&p("n=10;{3}")).unwrap();
        // the later rows, fed from the brute-force table
        let mut full = brute.clone();
        assert_eq!(zech_chain(&mut full, &b(76), &b(28)).unwrap(), None);
        let (i, j) = (b(76), b(28));
        let r = full.ring().clone();
        let target = r.sub(&full.get(&i).unwrap(), &full.get(&j).unwrap());
        assert_eq!(target, b(11));
        assert_eq!(full.get(&target), Some(b(200)));
        let target = r.sub(&full.get(&b(274)).unwrap(), &full.get(&b(51)).unwrap());
        assert_eq!((target.clone(), full.get(&target).unwrap()), (b(107), b(376)));
        assert_eq!(zech_chain(&mut t, &b(999), &b(998)).unwrap(), None);
    }

    #[test]
    fn subfield_lifts() {
        let t4 = zech_bruteforce(&p("x^4+x+1")).unwrap();
        assert_eq!(zech_subfield_lift(&t4, 4).unwrap().len(), 14);
        let t2 = zech_bruteforce(&p("x^2+x+1")).unwrap();
        let lifted = zech_subfield_lift(&t2, 4).unwrap();
        assert!(lifted.contains(&(b(5), b(10))));
        for (k, v) in &lifted {
            assert_eq!(t4.get(k).as_ref(), Some(v));
        }
        let q10 = p("n=10;{3}");
        let q5 = associated_irreducible(&q10, &b(33)).unwrap().f;
        let l = zech_subfield_lift(&zech_bruteforce(&q5).unwrap(), 10).unwrap();
        assert_eq!(l.len(), 30);
        let t10 = zech_bruteforce(&q10).unwrap();
        for (k, v) in &l {
            assert_eq!(t10.get(k).as_ref(), Some(v));
        }
        assert!(matches!(zech_subfield_lift(&t4, 6), Err(Error::InvalidSubfield { .. })));
    }

    #[test]
    fn resolve_by_doubling() {
        let t = zech_bruteforce(&p("n=10;{3}")).unwrap();
        assert_eq!(zech_resolve(&t, &b(6)).unwrap(), b(20));
        let t4 = zech_bruteforce(&p("x^4+x+1")).unwrap();
        assert_eq!(zech_resolve(&t4, &b(8)).unwrap(), b(2));
        let empty = ZechTable::new(10, None);
        assert!(matches!(zech_resolve(&empty, &b(6)), Err(Error::MissingEntry(_))));
        let s = zech_seed_trinomial(&p("n=31;{3}")).unwrap();
        assert_eq!(zech_resolve(&s, &b(12)).unwrap(), b(124));
    }

    #[test]
    fn propagation_n10_matches_bruteforce() {
        let q = p("n=10;{3}");
        let built = build_zech_table(
            &q,
            &ZechBudget {
                subfield: true,
                ..Default::default()
            },
        )
        .unwrap();
        let brute = zech_bruteforce(&q).unwrap();
        assert!(built.is_complete());
        for k in 1..1023 {
            assert_eq!(built.get_u64(k), brute.get_u64(k));
        }
    }

    #[test]
    fn every_stored_entry_obeys_the_laws() {
        let t = zech_bruteforce(&p("n=10;{3}")).unwrap();
        let r = t.ring().clone();
        let m = 1023u64;
        for k in 1..m {
            let v = t.get_u64(k).unwrap();
            assert_ne!(v, k);
            assert_eq!(t.get_u64(v), Some(k));
            assert_eq!(t.get_u64(2 * k % m), Some(2 * v % m));
            assert_eq!(t.get_u64(m - k), Some((v + m - k) % m));
            assert_eq!(r.coset(&b(k)).size, r.coset(&b(v)).size);
        }
    }

    #[test]
    fn change_of_primitive_element() {
        // δ = α^7 has minimal polynomial found by decimation
        let q = p("x^4+x+1");
        let d = associated_irreducible(&q, &b(7)).unwrap().f;
        let ta = zech_bruteforce(&q).unwrap();
        let td = zech_bruteforce(&d).unwrap();
        let binv = 13u64; // 7 · 13 ≡ 1 (mod 15)
        for k in 1..15u64 {
            let via = ta.get_u64(7 * k % 15).unwrap() * binv % 15;
            assert_eq!(td.get_u64(k), Some(via));
        }
    }

    #[test]
    fn text_round_trip() {
        let t = zech_bruteforce(&p("x^4+x+1")).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("zech v1 n=4 p=n=4;{1} complete=1\n"));
        assert!(text.contains("\n3 14 bruteforce\n"));
        let back = ZechTable::from_text(&text).unwrap();
        assert_eq!(back.entries(), t.entries());
        assert!(ZechTable::from_text("zech v1 n=4 p=- complete=1\n1 4 seed\n").is_err());
        assert!(ZechTable::from_text("zech v1 n=4 p=- complete=0\n2 8 seed\n").is_err());
        assert!(ZechTable::from_text("nonsense").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn propagation_agrees_with_bruteforce(n in 5usize..=16, k in 1usize..8) {
            let q = BinPoly::trinomial(n, k.min(n - 1));
            prop_assume!(crate::gf2poly::is_primitive_bundled(&q).unwrap());
            let brute = zech_bruteforce(&q).unwrap();
            let built = build_zech_table(&q, &ZechBudget { subfield: true, ..Default::default() }).unwrap();
            for (leader, v, _) in built.entries() {
                prop_assert_eq!(brute.get(&leader), Some(v));
            }
            let m = (1u64 << n) - 1;
            for kk in 1..m {
                let v = brute.get_u64(kk).unwrap();
                prop_assert_eq!(brute.get_u64(v), Some(kk));
            }
        }
    }
}
