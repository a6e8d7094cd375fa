//! The bar involution `ψ` on truncated tensor spaces.
//!
//! `ψ` is never assembled from PBW vectors. Writing the quasi-R-matrix action
//! across the last factor as
//!
//! ```text
//! ψ_n(a ⊗ v_r) = Σ_t Y_{r,t} ψ_{n-1}(a) ⊗ v_t,
//! ```
//!
//! the operators `Z_{r,t} = Y_{r,t} Ψ_{n-1}` are pinned down by two facts:
//! `Y_{r,t} = δ_{rt}` whenever `v_r` is killed by every `F_i` (the second
//! leg of the quasi-R-matrix is built from `F`'s), and `ψ` commutes with every
//! `E_i`. Expanding `ψ(E_i(a ⊗ v_r)) = E_i ψ(a ⊗ v_r)` with the coproduct gives,
//! for an edge `E_i v_r = c v_{r'}`,
//!
//! ```text
//! c̄ Z_{r',t} = Σ_{E_i v_s = c_s v_t} c_s Z_{r,s} + q^{-w_t} E Z_{r,t} - q^{w_r} Z_{r,t} Ē
//! ```
//!
//! where `w_x = (α_i, wt v_x)` and `E` is the matrix of `E_i` on the first
//! `n - 1` factors. Walking the `E`-edges down from the `F`-killed labels
//! produces every `Z_{r,t}`; different `t` are independent and run in
//! parallel.

use crate::error::{Error, Result};
use crate::exactpoly::{Column, LaurentPoly, SparseMatrix, SparseVector};
use crate::par::Exec;
use crate::quantumrep::{Cartan, CartanType, Generator, TensorSpace};
use crate::weights::{bruhat_leq, RootVector, WeightTuple};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Arc, RwLock};

/// `ψ` on the window `|λ_i| < k` of `n` factors; column `j` holds `ψ(M_j)`.
#[derive(Clone, Debug)]
pub struct BarTable {
    space: TensorSpace,
    psi: SparseMatrix,
}

type ZGrid = Vec<Vec<Option<SparseMatrix>>>;

impl BarTable {
    /// `l` counts the natural factors for [`CartanType::AMixed`] and is
    /// ignored otherwise.
    pub fn new(cartan: Cartan, n: usize, l: usize, exec: Exec) -> Result<Self> {
        let mut space = TensorSpace::new(cartan, 1, l.min(1))?;
        let mut psi = SparseMatrix::identity(space.dim());
        for step in 2..=n {
            let next = TensorSpace::new(cartan, step, l)?;
            psi = extend(&space, &psi, &next, exec)?;
            space = next;
        }
        if n == 1 && cartan.ty == CartanType::AMixed {
            space = TensorSpace::new(cartan, 1, l)?;
        }
        Ok(BarTable { space, psi })
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.psi
    }

    pub fn cutoff(&self) -> u32 {
        self.space.cartan().k
    }

    pub fn column_indexed(&self, j: usize) -> &[(u32, LaurentPoly)] {
        self.psi.col(j)
    }

    /// `ψ(M_λ)`.
    pub fn column(&self, la: &WeightTuple) -> Result<SparseVector<WeightTuple>> {
        let j = self
            .space
            .index_of(la)
            .ok_or(Error::WindowEscape { needed: la.min_cutoff() })?;
        Ok(self.space.from_indexed(self.psi.col(j)))
    }

    /// `ψ` applied to an arbitrary vector of the window (antilinear).
    pub fn apply(&self, v: &SparseVector<WeightTuple>) -> Result<SparseVector<WeightTuple>> {
        let x: Column = self.space.to_indexed(v)?.into_iter().map(|(i, c)| (i, c.bar())).collect();
        Ok(self.space.from_indexed(&self.psi.apply(&x)))
    }

    /// `ψ ∘ ψ = id` on the whole window.
    pub fn is_involution(&self) -> bool {
        self.psi.mul(&self.psi.bar()) == SparseMatrix::identity(self.space.dim())
    }

    /// Every column is `M_λ` plus strictly Bruhat-lower terms.
    pub fn check_triangular(&self) -> Result<()> {
        for j in 0..self.space.dim() {
            let la = self.space.tuple(j);
            let mut diag = false;
            for (i, c) in self.psi.col(j) {
                if *i as usize == j {
                    if !c.is_one() {
                        return Err(Error::NonTriangular(format!("diagonal of ψ(M_{la}) is {c}")));
                    }
                    diag = true;
                } else {
                    let mu = self.space.tuple(*i as usize);
                    if !bruhat_leq(&mu, &la)? {
                        return Err(Error::NonTriangular(format!("ψ(M_{la}) touches M_{mu}")));
                    }
                }
            }
            if !diag {
                return Err(Error::NonTriangular(format!("ψ(M_{la}) misses its diagonal")));
            }
        }
        Ok(())
    }
}

/// For every label: either a base (killed by all `F_i`), or one incoming
/// edge `E_i v_r = c v_x`.
enum Source {
    Base,
    Edge { node: i32, from: usize, c: LaurentPoly },
}

fn last_factor_plan(cartan: &Cartan, dual: bool) -> Result<Vec<(usize, Source)>> {
    let labels = cartan.labels();
    let nodes = cartan.nodes();
    let pos: HashMap<i32, usize> = labels.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut incoming: Vec<Option<(i32, usize, LaurentPoly)>> = vec![None; labels.len()];
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for (ri, r) in labels.iter().enumerate() {
        for &i in &nodes {
            if let Some((y, c)) = cartan.e_label(i, *r, dual) {
                let yi = pos[&y];
                out_edges[ri].push(yi);
                if incoming[yi].is_none() {
                    incoming[yi] = Some((i, ri, c));
                }
            }
        }
    }
    let base: Vec<usize> = (0..labels.len())
        .filter(|x| nodes.iter().all(|&i| cartan.f_label(i, labels[*x], dual).is_none()))
        .collect();
    let mut order = Vec::new();
    let mut seen = vec![false; labels.len()];
    let mut queue: VecDeque<usize> = base.iter().copied().collect();
    for b in &base {
        seen[*b] = true;
        order.push((*b, Source::Base));
    }
    while let Some(r) = queue.pop_front() {
        for &y in &out_edges[r] {
            if seen[y] {
                continue;
            }
            let (node, from, c) = incoming[y].clone().expect("edge target has an incoming edge");
            if !seen[from] {
                continue;
            }
            seen[y] = true;
            order.push((y, Source::Edge { node, from, c }));
            queue.push_back(y);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Invariant("natural module is not generated from its F-killed labels".into()));
    }
    Ok(order)
}

fn shift_mat(m: &SparseMatrix, e: i32) -> SparseMatrix {
    if e == 0 {
        m.clone()
    } else {
        m.scale(&LaurentPoly::monomial(e, 1))
    }
}

fn extend(prev: &TensorSpace, psi_prev: &SparseMatrix, next: &TensorSpace, exec: Exec) -> Result<SparseMatrix> {
    let cartan = *prev.cartan();
    let dual = next.is_dual(next.n() - 1);
    let labels = cartan.labels();
    let m = labels.len();
    let plan = last_factor_plan(&cartan, dual)?;

    let mut e_mats: BTreeMap<i32, (SparseMatrix, SparseMatrix)> = BTreeMap::new();
    for (_, src) in &plan {
        if let Source::Edge { node, .. } = src {
            if !e_mats.contains_key(node) {
                let e = prev.action_matrix(Generator::e(*node))?;
                let eb = e.bar();
                e_mats.insert(*node, (e, eb));
            }
        }
    }

    let mut z: ZGrid = vec![vec![None; m]; m];
    let ts: Vec<usize> = (0..m).collect();
    for (x, src) in &plan {
        match src {
            Source::Base => z[*x][*x] = Some(psi_prev.clone()),
            Source::Edge { node, from, c } => {
                let i = *node;
                let (e, eb) = &e_mats[&i];
                let w = |lab: usize| cartan.pair(i, labels[lab], dual);
                let w_r = w(*from);
                let row = &z[*from];
                let cbar = c.bar();
                let new_row = exec.try_map(&ts, |&t| -> Result<Option<SparseMatrix>> {
                    let mut acc: Option<SparseMatrix> = None;
                    let push = |acc: &mut Option<SparseMatrix>, add: SparseMatrix| {
                        *acc = Some(match acc.take() {
                            None => add,
                            Some(a) => a.add(&add),
                        });
                    };
                    for (s, zs) in row.iter().enumerate() {
                        let Some(zs) = zs else { continue };
                        if let Some((y, cs)) = cartan.e_label(i, labels[s], dual) {
                            if y == labels[t] {
                                push(&mut acc, zs.scale(&cs));
                            }
                        }
                    }
                    if let Some(zt) = &row[t] {
                        push(&mut acc, shift_mat(&e.mul(zt), -w(t)));
                        push(&mut acc, shift_mat(&zt.mul(eb), w_r).scale(&LaurentPoly::constant(-1)));
                    }
                    let Some(acc) = acc else { return Ok(None) };
                    if acc.is_zero() {
                        return Ok(None);
                    }
                    if cbar.is_one() {
                        return Ok(Some(acc));
                    }
                    let cols = acc
                        .columns()
                        .iter()
                        .map(|col| {
                            col.iter()
                                .map(|(r, v)| v.div_exact(&cbar).map(|q| (*r, q)))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| Error::Invariant(format!("bar recursion not integral: {e}")))?;
                    Ok(Some(SparseMatrix::from_columns(acc.rows(), cols)))
                })?;
                z[*x] = new_row;
            }
        }
    }

    // column (λ', r) of Ψ_n is Σ_t Z_{r,t}[:, λ'] ⊗ e_t
    let prev_dim = prev.dim();
    let cols_idx: Vec<usize> = (0..prev_dim * m).collect();
    let cols = exec.map(&cols_idx, |&j| {
        let (lp, r) = (j / m, j % m);
        let mut col: Vec<(u32, LaurentPoly)> = Vec::new();
        for (t, zt) in z[r].iter().enumerate() {
            if let Some(zt) = zt {
                col.extend(zt.col(lp).iter().map(|(rho, v)| ((*rho as usize * m + t) as u32, v.clone())));
            }
        }
        col.sort_unstable_by_key(|e| e.0);
        col
    });
    Ok(SparseMatrix::from_columns(next.dim(), cols))
}

/// `ψ(M_λ)` together with its window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarExpansion {
    pub la: WeightTuple,
    pub image: SparseVector<WeightTuple>,
    pub cutoff: u32,
}

/// The Cartan datum and natural-factor count matching `λ`'s lattice.
pub fn cartan_for(la: &WeightTuple, sector: bool, k: u32) -> Result<(Cartan, usize)> {
    use crate::weights::Lattice;
    let ty = match (la.lattice(), sector) {
        (Lattice::HalfInt, false) => CartanType::C,
        (Lattice::HalfInt, true) => CartanType::A,
        (Lattice::Int, false) => CartanType::B,
        (Lattice::Mixed { .. }, _) => CartanType::AMixed,
        (Lattice::Int, true) => {
            return Err(Error::Incompatible("sector involution is implemented for half-integer weights".into()))
        }
    };
    let l = match la.lattice() {
        Lattice::Mixed { l } => l as usize,
        _ => la.n(),
    };
    if !la.in_window(k) {
        return Err(Error::WindowEscape { needed: la.min_cutoff() });
    }
    Ok((Cartan::new(ty, k), l))
}

/// `ψ(M_λ)` in the window `k`; type is read off the lattice of `λ`.
pub fn bar_tensor(la: &WeightTuple, k: u32, exec: Exec) -> Result<BarExpansion> {
    let (cartan, l) = cartan_for(la, false, k)?;
    let table = BarTable::new(cartan, la.n(), l, exec)?;
    Ok(BarExpansion { la: la.clone(), image: table.column(la)?, cutoff: k })
}

/// `ψ_𝔞(M_λ)`: the involution of the `sl_∞` subalgebra without node 0.
pub fn bar_sector(la: &WeightTuple, k: u32, exec: Exec) -> Result<BarExpansion> {
    let (cartan, l) = cartan_for(la, true, k)?;
    let table = BarTable::new(cartan, la.n(), l, exec)?;
    Ok(BarExpansion { la: la.clone(), image: table.column(la)?, cutoff: k })
}

/// Restriction of a vector to the window `k`.
pub fn truncate(v: &SparseVector<WeightTuple>, k: u32) -> SparseVector<WeightTuple> {
    v.filter(|mu| mu.in_window(k))
}

/// Recomputes `ψ(M_λ)` in a wider window and compares after truncation.
pub fn stability_check(la: &WeightTuple, k: u32, k2: u32, exec: Exec) -> Result<bool> {
    if k2 == k {
        return Ok(true);
    }
    let a = bar_tensor(la, k, exec)?;
    let b = bar_tensor(la, k2.max(k), exec)?;
    Ok(truncate(&b.image, k.min(k2)) == truncate(&a.image, k.min(k2)))
}

/// The operator `ψ` on two factors, graded by the shift `ν` of the first
/// factor weight; since `ψ(v_r) = v_r`, this is the quasi-R-matrix itself.
#[derive(Clone, Debug)]
pub struct PairTheta {
    pub cartan: Cartan,
    /// `ν ↦ [(source, target, coefficient)]`.
    pub components: BTreeMap<RootVector, Vec<(WeightTuple, WeightTuple, LaurentPoly)>>,
}

impl PairTheta {
    pub fn new(cartan: Cartan, exec: Exec) -> Result<Self> {
        let table = BarTable::new(cartan, 2, 1, exec)?;
        let sp = table.space();
        let mut components: BTreeMap<RootVector, Vec<_>> = BTreeMap::new();
        for j in 0..sp.dim() {
            let src = sp.tuple(j);
            for (i, c) in table.column_indexed(j) {
                let dst = sp.tuple(*i as usize);
                let nu = first_weight(&dst).sub(&first_weight(&src));
                components.entry(nu).or_default().push((src.clone(), dst, c.clone()));
            }
        }
        Ok(PairTheta { cartan, components })
    }

    /// The `ν = 0` component is the identity.
    pub fn zero_component_is_identity(&self) -> bool {
        self.components
            .get(&RootVector::default())
            .is_some_and(|v| v.iter().all(|(s, d, c)| s == d && c.is_one()))
    }
}

fn first_weight(la: &WeightTuple) -> RootVector {
    la.wt().sub(&la.wt_r(2).unwrap_or_default())
}

/// Shared, read-mostly memo of bar tables keyed by `(cartan, n, l)`.
#[derive(Default)]
pub struct BarCache {
    tables: RwLock<HashMap<(Cartan, usize, usize), Arc<BarTable>>>,
}

impl BarCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, cartan: Cartan, n: usize, l: usize, exec: Exec) -> Result<Arc<BarTable>> {
        let key = (cartan, n, l);
        if let Some(t) = self.tables.read().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(BarTable::new(cartan, n, l, exec)?);
        Ok(self.tables.write().expect("cache lock").entry(key).or_insert(t).clone())
    }
}
