//! Cartan data, the natural representations and the tensor-power action.
//!
//! Every natural representation used here has the property that a Chevalley
//! generator sends a basis vector to at most one basis vector, so actions are
//! encoded label by label. Tensor powers use the coproduct
//! `Δ(E) = 1⊗E + E⊗K⁻¹`, `Δ(F) = K⊗F + F⊗1`, `Δ(K) = K⊗K`.
//!
//! Type B is handled in the rescaled basis `u_a = v_a` for `a != 0` and
//! `u_0 = v_0 / (t + t⁻¹)` (the basis in which monomials are the `M_λ`);
//! [`natural_action`] reports the unscaled `v_a` basis.

use crate::error::{Error, Result};
use crate::exactpoly::{axpy, collect_column, Int, LaurentPoly, SparseMatrix, SparseVector};
use crate::weights::{Lattice, WeightTuple};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    /// `sl_∞` with nodes `i >= 1` acting on half-integer labels; the
    /// subalgebra used for sign sectors.
    A,
    /// `sl_∞` with nodes indexed by `Z`, acting on a natural module and its
    /// restricted dual.
    AMixed,
    B,
    C,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::AMixed => "A-mixed",
            CartanType::B => "B",
            CartanType::C => "C",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(CartanType::A),
            "a-mixed" | "amixed" => Ok(CartanType::AMixed),
            "b" => Ok(CartanType::B),
            "c" => Ok(CartanType::C),
            _ => Err(Error::Incompatible(format!("unknown Cartan type {s:?}"))),
        }
    }
}

/// A Cartan type truncated to the window `|labels| < k`, together with the
/// finite set of nodes that preserve that window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cartan {
    pub ty: CartanType,
    pub k: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenKind {
    E,
    F,
    K,
    KInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub node: i32,
    /// Divided power for `E`/`F`; ignored for `K`.
    pub power: u32,
}

impl Generator {
    pub fn e(node: i32) -> Self {
        Generator { kind: GenKind::E, node, power: 1 }
    }
    pub fn f(node: i32) -> Self {
        Generator { kind: GenKind::F, node, power: 1 }
    }
    pub fn k(node: i32) -> Self {
        Generator { kind: GenKind::K, node, power: 1 }
    }
    pub fn k_inv(node: i32) -> Self {
        Generator { kind: GenKind::KInv, node, power: 1 }
    }
    pub fn e_div(node: i32, power: u32) -> Self {
        Generator { kind: GenKind::E, node, power }
    }
    pub fn f_div(node: i32, power: u32) -> Self {
        Generator { kind: GenKind::F, node, power }
    }
}

fn sgn_fold(label: i32) -> (i32, i32) {
    (label.abs(), label.signum())
}

impl Cartan {
    pub fn new(ty: CartanType, k: u32) -> Self {
        Cartan { ty, k }
    }

    pub fn lattice(&self, l: usize) -> Lattice {
        match self.ty {
            CartanType::A | CartanType::C => Lattice::HalfInt,
            CartanType::B => Lattice::Int,
            CartanType::AMixed => Lattice::Mixed { l: l as u8 },
        }
    }

    /// Doubled labels of the truncated natural module.
    pub fn labels(&self) -> Vec<i32> {
        self.lattice(0).window_labels(self.k)
    }

    pub fn nodes(&self) -> Vec<i32> {
        let k = self.k as i32;
        match self.ty {
            CartanType::C => (0..k).collect(),
            CartanType::A => (1..k).collect(),
            CartanType::B => (0..k - 1).collect(),
            CartanType::AMixed => (-k + 1..k - 1).collect(),
        }
    }

    pub fn has_node(&self, i: i32) -> bool {
        self.nodes().contains(&i)
    }

    /// Smallest cutoff whose window is preserved by node `i`.
    pub fn cutoff_for_node(ty: CartanType, i: i32) -> u32 {
        let need = match ty {
            CartanType::C | CartanType::A => i + 1,
            CartanType::B => i + 2,
            CartanType::AMixed => (i + 2).max(1 - i),
        };
        need.max(1) as u32
    }

    /// `q_i = q^{d_i}`.
    pub fn d(&self, i: i32) -> i32 {
        match (self.ty, i) {
            (CartanType::C, 0) => 2,
            (CartanType::B, 0) => 1,
            (CartanType::B, _) => 2,
            _ => 1,
        }
    }

    /// `(α_i, wt v_label)`, negated on dual factors.
    pub fn pair(&self, i: i32, label: i32, dual: bool) -> i32 {
        let v = match self.ty {
            CartanType::C | CartanType::A => {
                let (r, s) = sgn_fold(label);
                if i == 0 {
                    if r == 1 {
                        -2 * s
                    } else {
                        0
                    }
                } else if r == 2 * i - 1 {
                    s
                } else if r == 2 * i + 1 {
                    -s
                } else {
                    0
                }
            }
            CartanType::B => {
                let (a, s) = sgn_fold(label / 2);
                if i == 0 {
                    if a == 1 {
                        -2 * s
                    } else {
                        0
                    }
                } else if a == i {
                    2 * s
                } else if a == i + 1 {
                    -2 * s
                } else {
                    0
                }
            }
            CartanType::AMixed => {
                let a = label / 2;
                (a == i) as i32 - (a == i + 1) as i32
            }
        };
        if dual {
            -v
        } else {
            v
        }
    }

    /// `E_i u_label`, if nonzero.
    pub fn e_label(&self, i: i32, label: i32, dual: bool) -> Option<(i32, LaurentPoly)> {
        let one = LaurentPoly::one;
        match self.ty {
            CartanType::C | CartanType::A => {
                if i == 0 {
                    (label == 1).then(|| (-1, one()))
                } else if label == 2 * i + 1 {
                    Some((2 * i - 1, one()))
                } else if label == -2 * i + 1 {
                    Some((-2 * i - 1, one()))
                } else {
                    None
                }
            }
            CartanType::B => {
                let a = label / 2;
                if i == 0 {
                    match a {
                        1 => Some((0, bracket_c())),
                        0 => Some((-2, one())),
                        _ => None,
                    }
                } else if a == i + 1 {
                    Some((2 * i, one()))
                } else if a == -i {
                    Some((-2 * i - 2, one()))
                } else {
                    None
                }
            }
            CartanType::AMixed => {
                let a = label / 2;
                if !dual && a == i + 1 {
                    Some((2 * i, one()))
                } else if dual && a == i {
                    Some((2 * i + 2, one()))
                } else {
                    None
                }
            }
        }
    }

    /// `F_i u_label`, if nonzero.
    pub fn f_label(&self, i: i32, label: i32, dual: bool) -> Option<(i32, LaurentPoly)> {
        let one = LaurentPoly::one;
        match self.ty {
            CartanType::C | CartanType::A => {
                if i == 0 {
                    (label == -1).then(|| (1, one()))
                } else if label == 2 * i - 1 {
                    Some((2 * i + 1, one()))
                } else if label == -2 * i - 1 {
                    Some((-2 * i + 1, one()))
                } else {
                    None
                }
            }
            CartanType::B => {
                let a = label / 2;
                if i == 0 {
                    match a {
                        -1 => Some((0, bracket_c())),
                        0 => Some((2, one())),
                        _ => None,
                    }
                } else if a == i {
                    Some((2 * i + 2, one()))
                } else if a == -i - 1 {
                    Some((-2 * i, one()))
                } else {
                    None
                }
            }
            CartanType::AMixed => {
                let a = label / 2;
                if !dual && a == i {
                    Some((2 * i + 2, one()))
                } else if dual && a == i + 1 {
                    Some((2 * i, one()))
                } else {
                    None
                }
            }
        }
    }
}

/// `t + t⁻¹`.
pub fn bracket_c() -> LaurentPoly {
    LaurentPoly::from_terms([(-1, 1i64), (1, 1)])
}

fn check_node(cartan: &Cartan, i: i32) -> Result<()> {
    if cartan.has_node(i) {
        Ok(())
    } else {
        Err(Error::WindowEscape { needed: Cartan::cutoff_for_node(cartan.ty, i) })
    }
}

/// Image of one basis vector of the natural module (dual module if `dual`).
/// Type B is reported in the unscaled basis `v_a`.
pub fn natural_action(cartan: &Cartan, g: Generator, label: i32, dual: bool) -> Result<SparseVector<i32>> {
    if !cartan.labels().contains(&label) {
        return Err(Error::InvalidWeight(format!("label {label} (doubled) outside the window")));
    }
    check_node(cartan, g.node)?;
    let i = g.node;
    let mut cur: SparseVector<i32> = SparseVector::unit(label);
    match g.kind {
        GenKind::K | GenKind::KInv => {
            let s = if g.kind == GenKind::K { 1 } else { -1 };
            return Ok(cur.scale(&LaurentPoly::monomial(s * cartan.pair(i, label, dual), 1)));
        }
        GenKind::E | GenKind::F => {
            for _ in 0..g.power {
                let mut next = SparseVector::new();
                for (x, c) in cur.iter() {
                    let img = if g.kind == GenKind::E {
                        cartan.e_label(i, *x, dual)
                    } else {
                        cartan.f_label(i, *x, dual)
                    };
                    if let Some((y, a)) = img {
                        next.add_term(y, &(c * &a));
                    }
                }
                cur = next;
            }
            let fact = LaurentPoly::q_factorial(g.power, cartan.d(i));
            cur = cur
                .iter()
                .map(|(x, c)| c.div_exact(&fact).map(|v| (*x, v)))
                .collect::<Result<SparseVector<i32>>>()?;
        }
    }
    if cartan.ty == CartanType::B {
        // u_0 = v_0 / c: convert coordinates from u to v.
        let c = bracket_c();
        let src_zero = label == 0;
        let mut out = SparseVector::new();
        for (x, v) in cur.iter() {
            let mut v = v.clone();
            if *x == 0 {
                v = v.div_exact(&c)?;
            }
            if src_zero {
                v = &v * &c;
            }
            out.add_term(*x, &v);
        }
        return Ok(out);
    }
    Ok(cur)
}

/// The truncated tensor space `V_{<k}^{⊗n}` (with dual factors for the
/// mixed type), indexed in mixed radix with the last factor fastest.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    cartan: Cartan,
    n: usize,
    duals: Vec<bool>,
    labels: Vec<i32>,
    pos: HashMap<i32, usize>,
    lattice: Lattice,
}

impl TensorSpace {
    /// `l` is the number of natural (non-dual) factors; it is ignored except
    /// for [`CartanType::AMixed`].
    pub fn new(cartan: Cartan, n: usize, l: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidWeight("n must be positive".into()));
        }
        let labels = cartan.labels();
        if labels.is_empty() {
            return Err(Error::WindowEscape { needed: 1 });
        }
        let l = if cartan.ty == CartanType::AMixed { l.min(n) } else { n };
        let duals = (0..n).map(|p| p >= l).collect();
        let pos = labels.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        Ok(TensorSpace { cartan, n, duals, labels, pos, lattice: cartan.lattice(l) })
    }

    pub fn cartan(&self) -> &Cartan {
        &self.cartan
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn radix(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[i32] {
        &self.labels
    }
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }
    pub fn is_dual(&self, p: usize) -> bool {
        self.duals[p]
    }
    pub fn dim(&self) -> usize {
        self.radix().pow(self.n as u32)
    }

    pub fn label_index(&self, label: i32) -> Option<usize> {
        self.pos.get(&label).copied()
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let m = self.radix();
        let mut d = vec![0; self.n];
        for p in (0..self.n).rev() {
            d[p] = idx % m;
            idx /= m;
        }
        d
    }

    pub fn index_of_digits(&self, d: &[usize]) -> usize {
        d.iter().fold(0, |acc, x| acc * self.radix() + x)
    }

    pub fn index_of(&self, la: &WeightTuple) -> Option<usize> {
        if la.n() != self.n || la.lattice() != self.lattice {
            return None;
        }
        let mut idx = 0;
        for d in la.doubled() {
            idx = idx * self.radix() + self.label_index(*d)?;
        }
        Some(idx)
    }

    pub fn tuple(&self, idx: usize) -> WeightTuple {
        let doubled = self.digits(idx).into_iter().map(|i| self.labels[i]).collect();
        WeightTuple::new(doubled, self.lattice).expect("window labels fit the lattice")
    }

    /// Image of a basis vector under a generator.
    pub fn act_on_index(&self, g: Generator, idx: usize) -> Result<Vec<(u32, LaurentPoly)>> {
        check_node(&self.cartan, g.node)?;
        let i = g.node;
        let digits = self.digits(idx);
        match g.kind {
            GenKind::K | GenKind::KInv => {
                let s = if g.kind == GenKind::K { 1 } else { -1 };
                let e: i32 = digits
                    .iter()
                    .enumerate()
                    .map(|(p, d)| self.cartan.pair(i, self.labels[*d], self.duals[p]))
                    .sum();
                Ok(vec![(idx as u32, LaurentPoly::monomial(s * e, 1))])
            }
            GenKind::E | GenKind::F => {
                let mut cur: Vec<(u32, LaurentPoly)> = vec![(idx as u32, LaurentPoly::one())];
                for _ in 0..g.power {
                    let mut acc = HashMap::new();
                    for (j, c) in &cur {
                        axpy(&mut acc, &self.raw_step(g.kind, i, *j as usize), c);
                    }
                    cur = collect_column(acc);
                }
                if g.power > 1 {
                    let fact = LaurentPoly::q_factorial(g.power, self.cartan.d(i));
                    cur = cur
                        .into_iter()
                        .map(|(r, c)| c.div_exact(&fact).map(|v| (r, v)))
                        .collect::<Result<_>>()?;
                }
                Ok(cur)
            }
        }
    }

    fn raw_step(&self, kind: GenKind, i: i32, idx: usize) -> Vec<(u32, LaurentPoly)> {
        let digits = self.digits(idx);
        let w: Vec<i32> = digits
            .iter()
            .enumerate()
            .map(|(p, d)| self.cartan.pair(i, self.labels[*d], self.duals[p]))
            .collect();
        let mut out = Vec::new();
        for j in 0..self.n {
            let label = self.labels[digits[j]];
            let img = match kind {
                GenKind::E => self.cartan.e_label(i, label, self.duals[j]),
                _ => self.cartan.f_label(i, label, self.duals[j]),
            };
            let Some((y, c)) = img else { continue };
            // E: K⁻¹ on every later factor; F: K on every earlier factor
            let exp: i32 = match kind {
                GenKind::E => -w[j + 1..].iter().sum::<i32>(),
                _ => w[..j].iter().sum(),
            };
            let mut d = digits.clone();
            d[j] = self.pos[&y];
            out.push((self.index_of_digits(&d) as u32, c.shift(exp)));
        }
        out
    }

    /// Column-major matrix of a generator on the whole window.
    pub fn action_matrix(&self, g: Generator) -> Result<SparseMatrix> {
        let cols = (0..self.dim())
            .map(|j| {
                let mut c = self.act_on_index(g, j)?;
                c.sort_unstable_by_key(|e| e.0);
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }

    pub fn to_indexed(&self, v: &SparseVector<WeightTuple>) -> Result<Vec<(u32, LaurentPoly)>> {
        let mut out = Vec::with_capacity(v.len());
        for (la, c) in v.iter() {
            let idx = self.index_of(la).ok_or(Error::WindowEscape { needed: la.min_cutoff() })?;
            out.push((idx as u32, c.clone()));
        }
        out.sort_unstable_by_key(|e| e.0);
        Ok(out)
    }

    pub fn from_indexed(&self, col: &[(u32, LaurentPoly)]) -> SparseVector<WeightTuple> {
        col.iter().map(|(i, c)| (self.tuple(*i as usize), c.clone())).collect()
    }

    /// A generator applied to a vector of the window.
    pub fn tensor_action(&self, g: Generator, v: &SparseVector<WeightTuple>) -> Result<SparseVector<WeightTuple>> {
        let x = self.to_indexed(v)?;
        let mut acc = HashMap::new();
        for (j, c) in &x {
            axpy(&mut acc, &self.act_on_index(g, *j as usize)?, c);
        }
        Ok(self.from_indexed(&collect_column(acc)))
    }

    /// The action with `q` specialized to 1; coefficients stay integral.
    pub fn specialized_action_at_one(
        &self,
        g: Generator,
        v: &std::collections::BTreeMap<WeightTuple, Int>,
    ) -> Result<std::collections::BTreeMap<WeightTuple, Int>> {
        let lifted: SparseVector<WeightTuple> =
            v.iter().map(|(k, c)| (k.clone(), LaurentPoly::constant(c.clone()))).collect();
        let img = self.tensor_action(g, &lifted)?;
        Ok(img
            .iter()
            .map(|(k, c)| (k.clone(), c.eval_at_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }
}
