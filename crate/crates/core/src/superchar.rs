//! Characters of finite-dimensional modules of the queer Lie superalgebra:
//! Laurent Schur polynomials, Verma and Euler characters, and irreducible
//! characters assembled from the dual canonical basis.
//!
//! Exponents are doubled throughout, so `x_i^{1/2}` is exponent `1`.

use crate::canbasis::{CoeffTable, Kind};
use crate::error::{Error, Result};
use crate::exactpoly::Int;
use crate::weights::{Lattice, WeightTuple};
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Finitely supported `Σ c_a x^{a/2}` in `n` variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, Int>,
}

impl CharPoly {
    pub fn zero(n: usize) -> Self {
        CharPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(exp: Vec<i32>, c: impl Into<Int>) -> Self {
        let mut p = CharPoly::zero(exp.len());
        p.add_term(exp, &c.into());
        p
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], 1)
    }

    /// `x_a` (exponent 2 in slot `a`).
    pub fn var(n: usize, a: usize) -> Self {
        let mut e = vec![0; n];
        e[a] = 2;
        Self::monomial(e, 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Int)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> Int {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Vec<i32>, c: &Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                let v = o.get() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CharPoly, c: &Int) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Int) -> CharPoly {
        let mut out = CharPoly::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &CharPoly) -> CharPoly {
        let mut acc: BTreeMap<Vec<i32>, Int> = BTreeMap::new();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let slot = acc.entry(e).or_default();
                *slot = &*slot + &(c * d);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        CharPoly { n: self.n.max(other.n), terms: acc }
    }

    /// `w(f)` with `w(x_i) = x_{w(i)}`.
    pub fn permute(&self, w: &[usize]) -> CharPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; e.len()];
                for (i, x) in e.iter().enumerate() {
                    out[w[i]] = *x;
                }
                (out, c.clone())
            })
            .collect();
        CharPoly { n: self.n, terms }
    }

    pub fn is_symmetric(&self) -> bool {
        permutations(self.n).iter().all(|(w, _)| self.permute(w) == *self)
    }

    /// Lex-largest exponent.
    pub fn leading(&self) -> Option<(&Vec<i32>, &Int)> {
        self.terms.iter().next_back()
    }

    /// Exact division by `d`; fails when a remainder is left.
    pub fn div_exact(&self, d: &CharPoly) -> Result<CharPoly> {
        let (dl, dc) = d.leading().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        let (dl, dc) = (dl.clone(), dc.clone());
        let dt = d.terms.keys().next().cloned().unwrap_or_default();
        let floor: Option<Vec<i32>> = self.terms.keys().next().map(|a| a.iter().zip(&dt).map(|(x, y)| x - y).collect());
        let mut rem = self.clone();
        let mut q = CharPoly::zero(self.n);
        while let Some((rl, rc)) = rem.leading() {
            let e: Vec<i32> = rl.iter().zip(&dl).map(|(x, y)| x - y).collect();
            if floor.as_ref().is_some_and(|f| e < *f) {
                return Err(Error::NotDivisible("remainder left in character division".into()));
            }
            let c = rc.div_exact(&dc).ok_or_else(|| Error::NotDivisible("coefficient".into()))?;
            let t = CharPoly::monomial(e.clone(), c.clone());
            rem.add_scaled(&t.mul(d), &Int::from(-1i64));
            q.add_term(e, &c);
        }
        Ok(q)
    }

    /// Sum of the coefficients (the dimension, for a genuine character).
    pub fn eval_at_one(&self) -> Int {
        self.terms.values().cloned().sum()
    }

    pub fn negative_multiplicities(&self) -> Vec<(Vec<i32>, Int)> {
        self.terms.iter().filter(|(_, c)| c.is_negative()).map(|(e, c)| (e.clone(), c.clone())).collect()
    }
}

impl std::ops::Add for &CharPoly {
    type Output = CharPoly;
    fn add(self, rhs: &CharPoly) -> CharPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Int::from(1i64));
        out
    }
}

impl std::ops::Sub for &CharPoly {
    type Output = CharPoly;
    fn sub(self, rhs: &CharPoly) -> CharPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Int::from(-1i64));
        out
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| {
                    if *x == 2 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, crate::weights::show_half(*x))
                    }
                })
                .collect();
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", mono.join(" "))?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs} {}", mono.join(" "))?,
            }
        }
        Ok(())
    }
}

impl Serialize for CharPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Mono<'a> {
            exp: &'a [i32],
            coeff: &'a Int,
        }
        let monos: Vec<Mono> = self.terms.iter().map(|(e, c)| Mono { exp: e, coeff: c }).collect();
        let mut st = s.serialize_struct("CharPoly", 1)?;
        st.serialize_field("monomials", &monos)?;
        st.end()
    }
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `Σ_w sgn(w) w(f)`.
pub fn antisymmetrize(f: &CharPoly) -> CharPoly {
    let mut out = CharPoly::zero(f.n);
    for (w, s) in permutations(f.n) {
        out.add_scaled(&f.permute(&w), &Int::from(s));
    }
    out
}

/// `Π_{a<b} (x_a - x_b)`.
pub fn vandermonde(n: usize) -> CharPoly {
    let mut v = CharPoly::one(n);
    for a in 0..n {
        for b in a + 1..n {
            v = v.mul(&(&CharPoly::var(n, a) - &CharPoly::var(n, b)));
        }
    }
    v
}

/// `ρ_n = (n-1, …, 1, 0)`, doubled.
pub fn rho(n: usize) -> Vec<i32> {
    (0..n).rev().map(|i| 2 * i as i32).collect()
}

fn check_weakly_decreasing(mu: &[i32]) -> Result<()> {
    if !mu.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::InvalidWeight(format!("{mu:?} is not weakly decreasing")));
    }
    if mu.windows(2).any(|w| (w[0] - w[1]) % 2 != 0) {
        return Err(Error::InvalidWeight(format!("{mu:?} mixes integer and half-integer parts")));
    }
    Ok(())
}

/// `s_μ(x_1, …, x_n)` by the bialternant `a_{μ+ρ} / a_ρ` (doubled `μ`).
pub fn schur_laurent(mu: &[i32]) -> Result<CharPoly> {
    check_weakly_decreasing(mu)?;
    let n = mu.len();
    let top: Vec<i32> = mu.iter().zip(rho(n)).map(|(a, r)| a + r).collect();
    antisymmetrize(&CharPoly::monomial(top, 1)).div_exact(&vandermonde(n))
}

/// `s_μ` by Jacobi–Trudi on the shifted partition, for cross-checking.
pub fn schur_jacobi_trudi(mu: &[i32]) -> Result<CharPoly> {
    check_weakly_decreasing(mu)?;
    let n = mu.len();
    if n == 0 {
        return Ok(CharPoly::one(0));
    }
    let c = mu[n - 1];
    let part: Vec<i64> = mu.iter().map(|x| ((x - c) / 2) as i64).collect();
    let h = |k: i64| -> CharPoly {
        if k < 0 {
            return CharPoly::zero(n);
        }
        let mut out = CharPoly::zero(n);
        let mut exp = vec![0i32; n];
        fn fill(i: usize, left: i64, exp: &mut Vec<i32>, out: &mut CharPoly) {
            if i + 1 == exp.len() {
                exp[i] = 2 * left as i32;
                out.add_term(exp.clone(), &Int::from(1i64));
                return;
            }
            for t in 0..=left {
                exp[i] = 2 * t as i32;
                fill(i + 1, left - t, exp, out);
            }
        }
        fill(0, k, &mut exp, &mut out);
        out
    };
    let mut det = CharPoly::zero(n);
    for (w, s) in permutations(n) {
        let mut term = CharPoly::one(n);
        for (i, &j) in w.iter().enumerate() {
            term = term.mul(&h(part[i] - i as i64 + j as i64));
            if term.is_zero() {
                break;
            }
        }
        det.add_scaled(&term, &Int::from(s));
    }
    Ok(det.mul(&CharPoly::monomial(vec![c; n], 1)))
}

/// `2^{⌈ℓ(λ)/2⌉}`.
pub fn clifford_factor(la: &WeightTuple) -> Int {
    Int::pow2(la.nonzero_count().div_ceil(2) as u32)
}

/// `ch Δ(λ) = 2^{⌈ℓ(λ)/2⌉} e^λ D⁻¹`, with `D⁻¹` expanded up to total height `depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VermaCharacter {
    pub factor: Int,
    pub series: CharPoly,
    pub depth: u32,
}

pub fn verma_character(la: &WeightTuple, depth: u32) -> VermaCharacter {
    let n = la.n();
    // (1 + y)/(1 - y) = 1 + 2y + 2y² + … for y = e^{-(ε_i - ε_j)}; track heights
    let mut acc: BTreeMap<Vec<i32>, Int> = BTreeMap::from([(la.doubled().to_vec(), Int::from(1i64))]);
    for i in 0..n {
        for j in i + 1..n {
            let step = (j - i) as u32;
            let mut next: BTreeMap<Vec<i32>, Int> = BTreeMap::new();
            for (e, c) in &acc {
                let h0 = height_below(la.doubled(), e);
                let mut m = 0u32;
                while h0 + m * step <= depth {
                    let mut f = e.clone();
                    f[i] -= 2 * m as i32;
                    f[j] += 2 * m as i32;
                    let w = if m == 0 { c.clone() } else { c * &Int::from(2i64) };
                    let slot = next.entry(f).or_default();
                    *slot = &*slot + &w;
                    m += 1;
                }
            }
            acc = next;
        }
    }
    let mut series = CharPoly::zero(n);
    for (e, c) in acc {
        series.add_term(e, &c);
    }
    VermaCharacter { factor: clifford_factor(la), series, depth }
}

/// Height of `λ - e` in simple roots `ε_k - ε_{k+1}`.
fn height_below(la: &[i32], e: &[i32]) -> u32 {
    let mut run = 0i32;
    let mut h = 0i32;
    for k in 0..la.len().saturating_sub(1) {
        run += la[k] - e[k];
        h += run;
    }
    (h / 2) as u32
}

/// How to evaluate an Euler character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerRoute {
    /// The alternating sum with the `Φ⁺(λ)` denominators cleared.
    AlternatingSum,
    /// `2^{⌈n/2⌉} s_{ρ_n} s_{λ-ρ_n}`; strictly decreasing half-integer `λ` only.
    SchurProduct,
}

fn check_dominant(la: &WeightTuple) -> Result<()> {
    if !la.is_finite_dim() {
        return Err(Error::InvalidWeight(format!("{la} is not dominant")));
    }
    if matches!(la.lattice(), Lattice::Mixed { .. }) {
        return Err(Error::Incompatible("characters are defined for plain lattices".into()));
    }
    Ok(())
}

pub fn euler_character(la: &WeightTuple, route: EulerRoute) -> Result<CharPoly> {
    check_dominant(la)?;
    let n = la.n();
    let d = la.doubled();
    match route {
        EulerRoute::SchurProduct => {
            if la.lattice() != Lattice::HalfInt {
                return Err(Error::Incompatible("the Schur product route needs half-integer λ".into()));
            }
            let shifted: Vec<i32> = d.iter().zip(rho(n)).map(|(a, r)| a - r).collect();
            let s = schur_laurent(&rho(n))?.mul(&schur_laurent(&shifted)?);
            Ok(s.scale(&Int::pow2(n.div_ceil(2) as u32)))
        }
        EulerRoute::AlternatingSum => {
            let zeros: Vec<usize> = (0..n).filter(|&i| d[i] == 0).collect();
            let mut num = CharPoly::zero(n);
            for (w, s) in permutations(n) {
                let mut exp = vec![0; n];
                for i in 0..n {
                    exp[w[i]] = d[i];
                }
                for (a, &i) in zeros.iter().enumerate() {
                    exp[w[i]] += 2 * (zeros.len() - 1 - a) as i32;
                }
                let wz: Vec<usize> = zeros.iter().map(|&i| w[i]).collect();
                let mut term = CharPoly::monomial(exp, s);
                for a in 0..n {
                    for b in a + 1..n {
                        if !(wz.contains(&a) && wz.contains(&b)) {
                            term = term.mul(&(&CharPoly::var(n, a) + &CharPoly::var(n, b)));
                        }
                    }
                }
                num.add_scaled(&term, &Int::from(1i64));
            }
            Ok(num.div_exact(&vandermonde(n))?.scale(&clifford_factor(la)))
        }
    }
}

/// Peels a combination of Euler characters of strictly decreasing
/// half-integer weights off `x`, leading term first.
pub fn decompose_euler(x: &CharPoly) -> Result<BTreeMap<WeightTuple, Int>> {
    let n = x.n();
    let lead = Int::pow2(n.div_ceil(2) as u32);
    let mut rem = x.clone();
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rem.leading() {
        let la = WeightTuple::new(e.clone(), Lattice::HalfInt)?;
        if !la.is_strictly_decreasing() {
            return Err(Error::Invariant(format!("leading exponent {la} is not dominant")));
        }
        let m = c.div_exact(&lead).ok_or_else(|| Error::NotDivisible(format!("multiplicity at {la}")))?;
        rem.add_scaled(&euler_character(&la, EulerRoute::SchurProduct)?, &(-&m));
        out.insert(la, m);
    }
    Ok(out)
}

/// Every weakly decreasing `μ + ε_r`.
pub fn pieri_step(mu: &WeightTuple) -> Vec<WeightTuple> {
    let d = mu.doubled();
    (0..d.len())
        .filter_map(|r| {
            let mut e = d.to_vec();
            e[r] += 2;
            e.windows(2).all(|w| w[0] >= w[1]).then(|| mu.with_doubled(e).ok()).flatten()
        })
        .collect()
}

/// `ch L(λ)` with the transition rows that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleCharacter {
    pub la: WeightTuple,
    pub character: CharPoly,
    /// `ℓ_{μλ}(1)`: `[L(λ)] = Σ_μ ℓ_{μλ}(1) [E(μ)]`.
    pub l_row: Vec<(WeightTuple, Int)>,
    /// `a_{λμ} = u_{-w₀λ,-w₀μ}(1)`: `[E(λ)] = Σ_μ a_{λμ} [L(μ)]`.
    pub a_row: Vec<(WeightTuple, Int)>,
    /// Same numbers keyed by the `u` indices `(-w₀λ, -w₀μ)`.
    pub a_row_u_indexed: Vec<((WeightTuple, WeightTuple), Int)>,
}

/// Assembles `ch L(λ)` from type C `ℓ` and `u` tables; provisional entries
/// are refused unless `allow_provisional`.
pub fn irreducible_character(
    la: &WeightTuple,
    l: &CoeffTable,
    u: &CoeffTable,
    allow_provisional: bool,
) -> Result<IrreducibleCharacter> {
    if la.lattice() != Lattice::HalfInt || !la.is_strictly_decreasing() {
        return Err(Error::InvalidWeight(format!("{la} is not a dominant half-integer weight")));
    }
    if l.kind != Kind::L || u.kind != Kind::U {
        return Err(Error::Incompatible("need type C ℓ and u tables".into()));
    }
    let mut l_row = Vec::new();
    let mut character = CharPoly::zero(la.n());
    for ((mu, col), c) in &l.entries {
        if col != la || !mu.is_strictly_decreasing() {
            continue;
        }
        if !allow_provisional && !l.is_certified(mu, la) {
            return Err(Error::Uncertified(format!("ℓ_{{{mu},{la}}}")));
        }
        let v = c.eval_at_one();
        if v.is_zero() {
            continue;
        }
        character.add_scaled(&euler_character(mu, EulerRoute::SchurProduct)?, &v);
        l_row.push((mu.clone(), v));
    }
    if l_row.is_empty() {
        return Err(Error::WindowEscape { needed: la.min_cutoff() });
    }
    let top = la.neg_w0();
    let mut a_row = Vec::new();
    let mut a_row_u_indexed = Vec::new();
    for ((a, b), c) in &u.entries {
        if *a != top {
            continue;
        }
        if !allow_provisional && !u.is_certified(a, b) {
            return Err(Error::Uncertified(format!("u_{{{a},{b}}}")));
        }
        let v = c.eval_at_one();
        if !v.is_zero() {
            a_row.push((b.neg_w0(), v.clone()));
            a_row_u_indexed.push(((a.clone(), b.clone()), v));
        }
    }
    Ok(IrreducibleCharacter { la: la.clone(), character, l_row, a_row, a_row_u_indexed })
}
