//! Weight tuples, the root-lattice weight map and the two Bruhat orderings.
//!
//! Every half-integer is stored doubled, so `3/2` is `3` and `-1` is `-2`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

/// Which lattice a tuple lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lattice {
    /// All entries in 1/2 + Z.
    HalfInt,
    /// All entries in Z; the type B setting.
    Int,
    /// First `l` entries label the natural module, the rest its dual. The
    /// formal shift `s` is dropped, so entries are integers.
    Mixed { l: u8 },
}

/// Root system used to decide dominance for a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootSystem {
    C,
    B,
    /// sl_infinity with nodes indexed by Z.
    AInf,
}

impl Lattice {
    pub fn root_system(self) -> RootSystem {
        match self {
            Lattice::HalfInt => RootSystem::C,
            Lattice::Int => RootSystem::B,
            Lattice::Mixed { .. } => RootSystem::AInf,
        }
    }

    fn entry_ok(self, d: i32) -> bool {
        match self {
            Lattice::HalfInt => d.rem_euclid(2) == 1,
            Lattice::Int | Lattice::Mixed { .. } => d.rem_euclid(2) == 0,
        }
    }

    /// Doubled labels `d` with `|d/2| < k`.
    pub fn window_labels(self, k: u32) -> Vec<i32> {
        let k = k as i32;
        (-2 * k + 1..2 * k).filter(|d| self.entry_ok(*d)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|s| **s == Sign::Minus).count()
    }

    /// The Bruhat order on sign sequences with fixed counts: `self <= other`
    /// iff every prefix of `self` has at least as many minus signs.
    pub fn leq(&self, other: &SignPattern) -> bool {
        if self.0.len() != other.0.len() || self.minus_count() != other.minus_count() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for (x, y) in self.0.iter().zip(&other.0) {
            a += (*x == Sign::Minus) as usize;
            b += (*y == Sign::Minus) as usize;
            if a < b {
                return false;
            }
        }
        true
    }

    /// All minus signs first.
    pub fn min_of(n: usize, minus: usize) -> SignPattern {
        SignPattern(
            (0..n)
                .map(|i| if i < minus { Sign::Minus } else { Sign::Plus })
                .collect(),
        )
    }

    pub fn is_min(&self) -> bool {
        *self == SignPattern::min_of(self.0.len(), self.minus_count())
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *s == Sign::Plus { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

/// An n-tuple of (doubled) weights with its lattice tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightTuple {
    doubled: Vec<i32>,
    lattice: Lattice,
}

impl WeightTuple {
    pub fn new(doubled: Vec<i32>, lattice: Lattice) -> Result<Self> {
        if doubled.is_empty() {
            return Err(Error::InvalidWeight("empty tuple".into()));
        }
        if let Lattice::Mixed { l } = lattice {
            if l as usize > doubled.len() {
                return Err(Error::InvalidWeight(format!("l = {l} exceeds n")));
            }
        }
        if let Some(d) = doubled.iter().find(|d| !lattice.entry_ok(**d)) {
            return Err(Error::InvalidWeight(format!(
                "entry {} does not lie in {:?}",
                show_half(*d),
                lattice
            )));
        }
        Ok(WeightTuple { doubled, lattice })
    }

    /// Half-integer tuple from doubled entries; panics on bad parity.
    pub fn half(doubled: &[i32]) -> Self {
        Self::new(doubled.to_vec(), Lattice::HalfInt).expect("half-integer tuple")
    }

    /// Integer tuple from plain (not doubled) entries.
    pub fn int(entries: &[i32]) -> Self {
        Self::new(entries.iter().map(|a| 2 * a).collect(), Lattice::Int).expect("integer tuple")
    }

    /// Mixed tuple from plain integer entries; the last `n - l` are dual.
    pub fn mixed(entries: &[i32], l: usize) -> Result<Self> {
        Self::new(entries.iter().map(|a| 2 * a).collect(), Lattice::Mixed { l: l as u8 })
    }

    pub fn doubled(&self) -> &[i32] {
        &self.doubled
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn n(&self) -> usize {
        self.doubled.len()
    }

    /// Whether position `i` (0-based) carries the dual module.
    pub fn is_dual(&self, i: usize) -> bool {
        matches!(self.lattice, Lattice::Mixed { l } if i >= l as usize)
    }

    pub fn with_doubled(&self, doubled: Vec<i32>) -> Result<Self> {
        Self::new(doubled, self.lattice)
    }

    pub fn in_window(&self, k: u32) -> bool {
        self.doubled.iter().all(|d| d.unsigned_abs() < 2 * k)
    }

    /// Smallest cutoff whose window contains the tuple.
    pub fn min_cutoff(&self) -> u32 {
        self.doubled.iter().map(|d| d.unsigned_abs() / 2 + 1).max().unwrap_or(1)
    }

    fn delta(&self, i: usize) -> RootVector {
        let d = self.doubled[i];
        let mut v = RootVector::default();
        match self.lattice {
            Lattice::HalfInt | Lattice::Int => {
                if d != 0 {
                    v.add(d.abs(), d.signum() as i64);
                }
            }
            Lattice::Mixed { .. } => {
                v.add(d, if self.is_dual(i) { -1 } else { 1 });
            }
        }
        v
    }

    /// `wt_r`, with `r` counted from 1.
    pub fn wt_r(&self, r: usize) -> Result<RootVector> {
        if r == 0 || r > self.n() {
            return Err(Error::Incompatible(format!("position {r} out of range 1..={}", self.n())));
        }
        let mut v = RootVector::default();
        for i in r - 1..self.n() {
            v.add_all(&self.delta(i), 1);
        }
        Ok(v)
    }

    pub fn wt(&self) -> RootVector {
        self.wt_r(1).expect("n >= 1")
    }

    /// A linear functional that strictly increases along the Bruhat order;
    /// it assigns 1 to every simple root (in doubled units).
    pub fn height(&self) -> i64 {
        self.doubled
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let g = if self.is_dual(j) { *d as i64 } else { -(*d as i64) };
                (j as i64 + 1) * g
            })
            .sum()
    }

    pub fn sign_pattern(&self) -> Result<SignPattern> {
        self.doubled
            .iter()
            .map(|d| match d.signum() {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                _ => Err(Error::InvalidWeight(format!("{self} has a zero entry"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignPattern)
    }

    /// The bijection from half-integer tuples onto integer tuples without
    /// zero entries: each entry moves half a unit away from zero.
    pub fn sharp(&self) -> Result<WeightTuple> {
        if self.lattice != Lattice::HalfInt {
            return Err(Error::Incompatible("sharp map needs a half-integer tuple".into()));
        }
        Ok(WeightTuple {
            doubled: self.doubled.iter().map(|d| d + d.signum()).collect(),
            lattice: Lattice::Int,
        })
    }

    /// Inverse of [`sharp`](Self::sharp).
    pub fn flat(&self) -> Result<WeightTuple> {
        if self.lattice != Lattice::Int || self.doubled.contains(&0) {
            return Err(Error::Incompatible("flat map needs a nonzero integer tuple".into()));
        }
        Ok(WeightTuple {
            doubled: self.doubled.iter().map(|d| d - d.signum()).collect(),
            lattice: Lattice::HalfInt,
        })
    }

    pub fn w0(&self) -> WeightTuple {
        let mut d = self.doubled.clone();
        d.reverse();
        WeightTuple { doubled: d, lattice: self.lattice }
    }

    pub fn neg(&self) -> WeightTuple {
        WeightTuple {
            doubled: self.doubled.iter().map(|d| -d).collect(),
            lattice: self.lattice,
        }
    }

    /// `-w0(self)`.
    pub fn neg_w0(&self) -> WeightTuple {
        self.w0().neg()
    }

    pub fn zero_count(&self) -> usize {
        self.doubled.iter().filter(|d| **d == 0).count()
    }

    pub fn nonzero_count(&self) -> usize {
        self.n() - self.zero_count()
    }

    pub fn is_typical(&self) -> bool {
        let d = &self.doubled;
        !(0..d.len()).any(|i| (i + 1..d.len()).any(|j| d[i] + d[j] == 0))
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] > w[1])
    }

    /// Membership in the finite-dimensional set: weakly decreasing and
    /// repeated entries only at zero.
    pub fn is_finite_dim(&self) -> bool {
        self.doubled.windows(2).all(|w| w[0] > w[1] || (w[0] == 0 && w[1] == 0))
    }

    /// Dominant index set for wedge data of this lattice.
    pub fn is_wedge_dominant(&self) -> bool {
        match self.lattice {
            Lattice::Int => self.is_finite_dim(),
            _ => self.is_strictly_decreasing(),
        }
    }
}

pub fn show_half(d: i32) -> String {
    if d % 2 == 0 {
        format!("{}", d / 2)
    } else {
        format!("{d}/2")
    }
}

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", show_half(*d))?;
            if self.is_dual(i) {
                write!(f, "*")?;
            }
        }
        Ok(())
    }
}

fn parse_half(tok: &str) -> Result<i32> {
    let bad = || Error::InvalidWeight(format!("cannot parse {tok:?}"));
    match tok.split_once('/') {
        Some((num, "2")) => num.trim().parse::<i32>().map_err(|_| bad()),
        Some((num, "1")) => num.trim().parse::<i32>().map(|v| 2 * v).map_err(|_| bad()),
        Some(_) => Err(bad()),
        None => tok.trim().parse::<i32>().map(|v| 2 * v).map_err(|_| bad()),
    }
}

impl FromStr for WeightTuple {
    type Err = Error;

    /// `"3/2,1/2,-5/2"`; dual positions carry a trailing `*` and must form
    /// a suffix, e.g. `"0,1,-2*"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut doubled = Vec::new();
        let mut dual = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (tok, star) = match tok.strip_suffix('*') {
                Some(t) => (t, true),
                None => (tok, false),
            };
            doubled.push(parse_half(tok)?);
            dual.push(star);
        }
        if dual.iter().any(|b| *b) {
            let l = dual.iter().position(|b| *b).unwrap();
            if dual[l..].iter().any(|b| !b) {
                return Err(Error::InvalidWeight("dual positions must come last".into()));
            }
            return WeightTuple::new(doubled, Lattice::Mixed { l: l as u8 });
        }
        let lattice = if doubled.iter().all(|d| d.rem_euclid(2) == 1) {
            Lattice::HalfInt
        } else if doubled.iter().all(|d| d % 2 == 0) {
            Lattice::Int
        } else {
            return Err(Error::InvalidWeight(format!("{s:?} mixes integers and half-integers")));
        };
        WeightTuple::new(doubled, lattice)
    }
}

impl Serialize for WeightTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WeightTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Finite integer combination of the `delta_r`, keyed by doubled `r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(BTreeMap<i32, i64>);

impl RootVector {
    pub fn add(&mut self, key: i32, m: i64) {
        let e = self.0.entry(key).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&key);
        }
    }

    pub fn add_all(&mut self, other: &RootVector, scale: i64) {
        for (k, m) in &other.0 {
            self.add(*k, scale * m);
        }
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        let mut v = self.clone();
        v.add_all(other, -1);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, key: i32) -> i64 {
        self.0.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    /// Coordinates in the simple roots, or `None` when this does not lie in
    /// the root lattice. Keys are node indices.
    pub fn simple_root_coords(&self, sys: RootSystem) -> Option<BTreeMap<i32, i64>> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return Some(out);
        }
        match sys {
            RootSystem::C => {
                // c_j = -(sum of x_r over r > j) for j >= 1, c_0 = (c_1 - x_{1/2}) / 2
                let top = *self.0.keys().next_back().unwrap();
                let mut tail = 0i64;
                let mut j = (top + 1) / 2;
                while j >= 1 {
                    tail += self.coeff(2 * j + 1);
                    let cj = -tail;
                    if cj != 0 {
                        out.insert(j, cj);
                    }
                    j -= 1;
                }
                let c1 = out.get(&1).copied().unwrap_or(0);
                let twice = c1 - self.coeff(1);
                if twice % 2 != 0 {
                    return None;
                }
                if twice != 0 {
                    out.insert(0, twice / 2);
                }
            }
            RootSystem::B => {
                let top = *self.0.keys().next_back().unwrap() / 2;
                let mut tail = 0i64;
                let mut m = top;
                while m >= 1 {
                    // tail = sum over a > m
                    let cm = -tail;
                    if cm != 0 {
                        out.insert(m, cm);
                    }
                    tail += self.coeff(2 * m);
                    m -= 1;
                }
                if tail != 0 {
                    out.insert(0, -tail);
                }
            }
            RootSystem::AInf => {
                let total: i64 = self.0.values().sum();
                if total != 0 {
                    return None;
                }
                let lo = *self.0.keys().next().unwrap() / 2;
                let hi = *self.0.keys().next_back().unwrap() / 2;
                let mut partial = 0i64;
                for m in lo..hi {
                    partial += self.coeff(2 * m);
                    if partial != 0 {
                        out.insert(m, partial);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn in_q_plus(&self, sys: RootSystem) -> bool {
        self.simple_root_coords(sys)
            .is_some_and(|c| c.values().all(|v| *v >= 0))
    }
}

fn compatible(mu: &WeightTuple, la: &WeightTuple) -> Result<()> {
    if mu.n() != la.n() || mu.lattice != la.lattice {
        return Err(Error::Incompatible(format!("{mu} vs {la}")));
    }
    Ok(())
}

/// `mu ⪯ la` in the Bruhat ordering (dominance of all partial weights).
pub fn bruhat_leq(mu: &WeightTuple, la: &WeightTuple) -> Result<bool> {
    compatible(mu, la)?;
    if mu == la {
        return Ok(true);
    }
    if mu.wt() != la.wt() || mu.height() >= la.height() {
        return Ok(false);
    }
    let sys = la.lattice.root_system();
    for r in 2..=la.n() {
        if !la.wt_r(r)?.sub(&mu.wt_r(r)?).in_q_plus(sys) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The chain ordering on weakly decreasing tuples: search for a sequence of
/// moves `+e_s - e_t` (s < t) applied where the two entries cancel.
pub fn bruhat_leq_chain(mu: &WeightTuple, la: &WeightTuple) -> Result<bool> {
    compatible(mu, la)?;
    if matches!(la.lattice, Lattice::Mixed { .. }) {
        return Err(Error::Incompatible("chain ordering is defined for types B and C".into()));
    }
    for x in [mu, la] {
        if !x.is_weakly_decreasing() {
            return Err(Error::InvalidWeight(format!("{x} is not weakly decreasing")));
        }
    }
    // Each move strictly increases |entries|, so the search never needs to
    // leave the box spanned by la.
    let bound = la.doubled.iter().map(|d| d.abs()).max().unwrap();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut queue = VecDeque::from([mu.doubled.clone()]);
    seen.insert(mu.doubled.clone());
    while let Some(v) = queue.pop_front() {
        if v == la.doubled {
            return Ok(true);
        }
        for s in 0..v.len() {
            for t in s + 1..v.len() {
                if v[s] + v[t] != 0 {
                    continue;
                }
                let mut w = v.clone();
                w[s] += 2;
                w[t] -= 2;
                if w[s].abs() > bound || w[t].abs() > bound {
                    continue;
                }
                if w.windows(2).all(|p| p[0] >= p[1]) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(false)
}

/// Every tuple of the lattice inside the window `|entries| < k`.
pub fn window_tuples(lattice: Lattice, n: usize, k: u32) -> Vec<WeightTuple> {
    let labels = lattice.window_labels(k);
    let mut out = Vec::with_capacity(labels.len().pow(n as u32));
    let mut idx = vec![0usize; n];
    if labels.is_empty() {
        return out;
    }
    loop {
        out.push(WeightTuple {
            doubled: idx.iter().map(|i| labels[*i]).collect(),
            lattice,
        });
        let mut p = n;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < labels.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Deterministic total order refining the Bruhat order (ascending).
pub fn order_key(la: &WeightTuple) -> (i64, &[i32]) {
    (la.height(), la.doubled())
}

/// All `mu ⪯ la` with `|mu_i| < k`, ascending along a linear extension.
pub fn interval_below(la: &WeightTuple, k: u32) -> Vec<WeightTuple> {
    let mut out: Vec<WeightTuple> = window_tuples(la.lattice, la.n(), k)
        .into_iter()
        .filter(|mu| bruhat_leq(mu, la).unwrap_or(false))
        .collect();
    out.sort_by(|a, b| order_key(a).cmp(&order_key(b)));
    out
}
