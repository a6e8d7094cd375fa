//! Canonical and dual canonical bases by triangular solving against `ψ`.
//!
//! For a column `λ` write `X_λ = Σ_μ x_μ M_μ` with `x_λ = 1`. Bar invariance
//! reads `x_μ - x̄_μ = Σ_{μ ≺ ν} x̄_ν r_{μν}`, where `r` is the matrix of `ψ`.
//! Walking `μ` downwards, the right side only involves coefficients already
//! fixed, and the normalization (`qℤ[q]` or `q⁻¹ℤ[q⁻¹]`) picks `x_μ` out of it.

use crate::barinv::{cartan_for, BarTable};
use crate::error::{Error, Result};
use crate::exactpoly::{Column, Int, LaurentPoly, SparseMatrix, SparseVector};
use crate::par::Exec;
use crate::quantumrep::{bracket_c, Cartan, CartanType};
use crate::weights::{Lattice, SignPattern, WeightTuple};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "ℓ")]
    L,
    #[serde(rename = "t^𝔞")]
    TSector,
    #[serde(rename = "ℓ^𝔞")]
    LSector,
    #[serde(rename = "u")]
    U,
    #[serde(rename = "u^𝔞")]
    USector,
}

impl Kind {
    /// Off-diagonal entries in `qℤ[q]` (true) or `q⁻¹ℤ[q⁻¹]`.
    pub fn positive(self) -> bool {
        !matches!(self, Kind::L | Kind::LSector)
    }

    pub fn sector(self) -> bool {
        matches!(self, Kind::TSector | Kind::LSector | Kind::USector)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).map_err(|_| fmt::Error)?;
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

/// Which standard basis type B expansions are written against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `N_λ = (t + t⁻¹)^{z(λ)} M_λ`.
    N,
    M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub kind: Kind,
    pub ty: CartanType,
    pub n: usize,
    pub cutoff: u32,
    pub entries: BTreeMap<(WeightTuple, WeightTuple), LaurentPoly>,
    pub normalization: Option<Normalization>,
    /// Entries that moved when the window was widened by one.
    pub provisional: BTreeSet<(WeightTuple, WeightTuple)>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    mu: WeightTuple,
    la: WeightTuple,
    poly: LaurentPoly,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    provisional: bool,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    kind: Kind,
    #[serde(rename = "type")]
    ty: String,
    n: usize,
    cutoff: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalization: Option<Normalization>,
    entries: Vec<EntryJson>,
}

impl Serialize for CoeffTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            kind: self.kind,
            ty: self.ty.to_string().to_uppercase(),
            n: self.n,
            cutoff: self.cutoff,
            normalization: self.normalization,
            entries: self
                .entries
                .iter()
                .map(|((mu, la), p)| EntryJson {
                    mu: mu.clone(),
                    la: la.clone(),
                    poly: p.clone(),
                    provisional: self.provisional.contains(&(mu.clone(), la.clone())),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TableJson::deserialize(d)?;
        let ty = j.ty.to_lowercase().parse().map_err(serde::de::Error::custom)?;
        let mut entries = BTreeMap::new();
        let mut provisional = BTreeSet::new();
        for e in j.entries {
            if e.provisional {
                provisional.insert((e.mu.clone(), e.la.clone()));
            }
            entries.insert((e.mu, e.la), e.poly);
        }
        Ok(CoeffTable { kind: j.kind, ty, n: j.n, cutoff: j.cutoff, entries, normalization: j.normalization, provisional })
    }
}

impl CoeffTable {
    pub fn new(kind: Kind, ty: CartanType, n: usize, cutoff: u32) -> Self {
        CoeffTable {
            kind,
            ty,
            n,
            cutoff,
            entries: BTreeMap::new(),
            normalization: None,
            provisional: BTreeSet::new(),
        }
    }

    pub fn entry(&self, mu: &WeightTuple, la: &WeightTuple) -> LaurentPoly {
        self.entries.get(&(mu.clone(), la.clone())).cloned().unwrap_or_default()
    }

    pub fn insert_column(&mut self, la: &WeightTuple, col: &SparseVector<WeightTuple>) {
        for (mu, c) in col.iter() {
            self.entries.insert((mu.clone(), la.clone()), c.clone());
        }
    }

    /// The indices `λ` that have a column.
    pub fn columns(&self) -> BTreeSet<WeightTuple> {
        self.entries.keys().map(|(_, la)| la.clone()).collect()
    }

    pub fn column(&self, la: &WeightTuple) -> SparseVector<WeightTuple> {
        self.entries
            .iter()
            .filter(|((_, l), _)| l == la)
            .map(|((mu, _), c)| (mu.clone(), c.clone()))
            .collect()
    }

    pub fn is_certified(&self, mu: &WeightTuple, la: &WeightTuple) -> bool {
        !self.provisional.contains(&(mu.clone(), la.clone()))
    }

    /// Unit diagonal and the `qℤ[q]` / `q⁻¹ℤ[q⁻¹]` contract off it.
    pub fn check_contract(&self) -> Result<()> {
        for la in self.columns() {
            if !self.entry(&la, &la).is_one() {
                return Err(Error::Invariant(format!("{} diagonal at {la} is not 1", self.kind)));
            }
        }
        for ((mu, la), c) in &self.entries {
            if mu == la {
                continue;
            }
            let ok = if self.kind.positive() { c.in_q_zq() } else { c.in_qinv_zqinv() };
            if !ok {
                return Err(Error::Invariant(format!("{}_{{{mu},{la}}} = {c} breaks normalization", self.kind)));
            }
        }
        Ok(())
    }

    /// Flags every entry (inside this window) that differs in `wider`.
    pub fn certify_against(&mut self, wider: &CoeffTable) {
        let k = self.cutoff;
        let inside = |mu: &WeightTuple, la: &WeightTuple| mu.in_window(k) && la.in_window(k);
        let mut keys: BTreeSet<(WeightTuple, WeightTuple)> = self.entries.keys().cloned().collect();
        keys.extend(wider.entries.keys().filter(|(mu, la)| inside(mu, la)).cloned());
        for (mu, la) in keys {
            if self.entry(&mu, &la) != wider.entry(&mu, &la) {
                self.provisional.insert((mu, la));
            }
        }
    }

    /// Type B: rewrite an `N`-normalized table against `M` (the diagonal
    /// becomes `(t + t⁻¹)^{z(λ)}`).
    pub fn to_m_basis(&self) -> CoeffTable {
        if self.normalization != Some(Normalization::N) {
            return self.clone();
        }
        let c = bracket_c();
        let mut out = self.clone();
        out.normalization = Some(Normalization::M);
        for ((mu, _), v) in out.entries.iter_mut() {
            *v = &*v * &c.pow(mu.zero_count() as u32);
        }
        out
    }
}

/// `ψ` rewritten against `N_μ = c^{z(μ)} M_μ`.
fn n_basis_psi(bar: &BarTable) -> Result<SparseMatrix> {
    let sp = bar.space();
    let c = bracket_c();
    let z: Vec<u32> = (0..sp.dim()).map(|i| sp.tuple(i).zero_count() as u32).collect();
    let cols = bar
        .matrix()
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            col.iter()
                .map(|(i, r)| {
                    let (zi, zj) = (z[*i as usize], z[j]);
                    let v = if zj >= zi {
                        r * &c.pow(zj - zi)
                    } else {
                        r.div_exact(&c.pow(zi - zj)).map_err(|e| {
                            Error::Invariant(format!("N-basis bar matrix not integral at ({i},{j}): {e}"))
                        })?
                    };
                    Ok((*i, v))
                })
                .collect::<Result<Column>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(sp.dim(), cols))
}

/// Solves one column against the matrix `psi` (`heights` orders the rows).
pub fn solve_column(psi: &SparseMatrix, heights: &[i64], j: usize, positive: bool) -> Result<Column> {
    let mut acc: BTreeMap<(i64, u32), LaurentPoly> = BTreeMap::new();
    let push = |acc: &mut BTreeMap<(i64, u32), LaurentPoly>, col: &[(u32, LaurentPoly)], diag: u32, c: &LaurentPoly| {
        for (i, r) in col {
            if *i != diag {
                *acc.entry((heights[*i as usize], *i)).or_default() += &(c * r);
            }
        }
    };
    push(&mut acc, psi.col(j), j as u32, &LaurentPoly::one());
    let mut out: Column = vec![(j as u32, LaurentPoly::one())];
    while let Some(((h, i), a)) = acc.pop_last() {
        if a.is_zero() {
            continue;
        }
        if h >= heights[j] {
            return Err(Error::NonTriangular(format!("row {i} sits above column {j}")));
        }
        if !(&a + &a.bar()).is_zero() {
            return Err(Error::Invariant(format!("discrepancy {a} is not antisymmetric")));
        }
        let x = if positive { a.positive_part() } else { a.negative_part() };
        if x.is_zero() {
            continue;
        }
        push(&mut acc, psi.col(i as usize), i, &x.bar());
        out.push((i, x));
    }
    out.sort_unstable_by_key(|e| e.0);
    Ok(out)
}

/// All columns of the `t` or `ℓ` table for a bar table.
pub fn solve_table(bar: &BarTable, positive: bool, exec: Exec) -> Result<CoeffTable> {
    let sp = bar.space();
    let ty = sp.cartan().ty;
    let b_t = ty == CartanType::B && positive;
    let psi_n;
    let psi = if b_t {
        psi_n = n_basis_psi(bar)?;
        &psi_n
    } else {
        bar.matrix()
    };
    let heights: Vec<i64> = (0..sp.dim()).map(|i| sp.tuple(i).height()).collect();
    let js: Vec<usize> = (0..sp.dim()).collect();
    let cols = exec.try_map(&js, |&j| solve_column(psi, &heights, j, positive))?;
    let kind = match (ty, positive) {
        (CartanType::A | CartanType::AMixed, true) => Kind::TSector,
        (CartanType::A | CartanType::AMixed, false) => Kind::LSector,
        (_, true) => Kind::T,
        (_, false) => Kind::L,
    };
    let mut table = CoeffTable::new(kind, ty, sp.n(), bar.cutoff());
    if ty == CartanType::B {
        table.normalization = Some(if positive { Normalization::N } else { Normalization::M });
    }
    for (j, col) in cols.into_iter().enumerate() {
        let la = sp.tuple(j);
        for (i, c) in col {
            table.entries.insert((sp.tuple(i as usize), la.clone()), c);
        }
    }
    Ok(table)
}

/// Full table on the window, flagged against the window one wider.
pub fn certified_table(cartan: Cartan, n: usize, l: usize, positive: bool, exec: Exec) -> Result<CoeffTable> {
    let mut t = solve_table(&BarTable::new(cartan, n, l, exec)?, positive, exec)?;
    let wider = Cartan::new(cartan.ty, cartan.k + 1);
    let w = solve_table(&BarTable::new(wider, n, l, exec)?, positive, exec)?;
    t.certify_against(&w);
    Ok(t)
}

fn single(la: &WeightTuple, k: u32, sector: bool, positive: bool, exec: Exec) -> Result<SparseVector<WeightTuple>> {
    let (cartan, l) = cartan_for(la, sector, k)?;
    let bar = BarTable::new(cartan, la.n(), l, exec)?;
    let sp = bar.space();
    let j = sp.index_of(la).ok_or(Error::WindowEscape { needed: la.min_cutoff() })?;
    let table_psi;
    let psi = if cartan.ty == CartanType::B && positive {
        table_psi = n_basis_psi(&bar)?;
        &table_psi
    } else {
        bar.matrix()
    };
    let heights: Vec<i64> = (0..sp.dim()).map(|i| sp.tuple(i).height()).collect();
    let col = solve_column(psi, &heights, j, positive)?;
    Ok(sp.from_indexed(&col))
}

/// `T_λ` against `M` (types C, A-mixed) or `N` (type B).
pub fn canonical_t(la: &WeightTuple, k: u32, exec: Exec) -> Result<SparseVector<WeightTuple>> {
    single(la, k, false, true, exec)
}

/// `L_λ` against `M`.
pub fn dual_canonical_l(la: &WeightTuple, k: u32, exec: Exec) -> Result<SparseVector<WeightTuple>> {
    single(la, k, false, false, exec)
}

/// `T^𝔞_λ` for the involution without node 0.
pub fn canonical_t_sector(la: &WeightTuple, k: u32, exec: Exec) -> Result<SparseVector<WeightTuple>> {
    single(la, k, true, true, exec)
}

pub fn dual_canonical_l_sector(la: &WeightTuple, k: u32, exec: Exec) -> Result<SparseVector<WeightTuple>> {
    single(la, k, true, false, exec)
}

/// `T_λ` and `L_λ` on `V^{⊗l} ⊗ W^{⊗m}` for `λ` on the mixed lattice.
pub fn mixed_dual_canonical(
    la: &WeightTuple,
    k: u32,
    exec: Exec,
) -> Result<(SparseVector<WeightTuple>, SparseVector<WeightTuple>)> {
    if !matches!(la.lattice(), Lattice::Mixed { .. }) {
        return Err(Error::Incompatible(format!("{la} is not on the mixed lattice")));
    }
    Ok((single(la, k, false, true, exec)?, single(la, k, false, false, exec)?))
}

/// Keeps the monomials of sign pattern `s`.
pub fn sector_projection(v: &SparseVector<WeightTuple>, s: &SignPattern) -> SparseVector<WeightTuple> {
    v.filter(|mu| mu.sign_pattern().as_ref() == Ok(s))
}

/// `⟨T_λ, L_{-μ}⟩ = Σ_ν t_{νλ} · conj(ℓ_{-ν,-μ})`, read from two tables on
/// the same window.
pub fn duality_pairing(
    la: &WeightTuple,
    mu: &WeightTuple,
    t: &CoeffTable,
    l: &CoeffTable,
) -> Result<LaurentPoly> {
    if t.kind != Kind::T || l.kind != Kind::L || t.cutoff != l.cutoff {
        return Err(Error::Incompatible("pairing needs t and ℓ tables on one window".into()));
    }
    let k = t.cutoff;
    if !la.in_window(k) || !mu.in_window(k) {
        return Err(Error::WindowEscape { needed: la.min_cutoff().max(mu.min_cutoff()) });
    }
    let lcol = l.column(&mu.neg());
    let mut sum = LaurentPoly::zero();
    for (nu, c) in t.column(la).iter() {
        let d = lcol.get(&nu.neg());
        if !d.is_zero() {
            sum += &(c * &d.bar());
        }
    }
    Ok(sum)
}

/// One negative coefficient found by [`positivity_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeTerm {
    pub mu: WeightTuple,
    pub la: WeightTuple,
    pub poly: LaurentPoly,
    pub negative: Vec<(i32, Int)>,
}

/// Every negative coefficient of every `t`-column in the window.
pub fn positivity_scan(ty: CartanType, n: usize, k: u32, exec: Exec) -> Result<Vec<NegativeTerm>> {
    let bar = BarTable::new(Cartan::new(ty, k), n, n, exec)?;
    let table = solve_table(&bar, true, exec)?;
    Ok(scan_table(&table))
}

/// One window visited by [`positivity_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanWindow {
    pub cutoff: u32,
    pub dim: usize,
    pub columns: usize,
    pub negatives: usize,
}

/// Machine-readable outcome of a widening positivity search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub n: usize,
    pub windows: Vec<ScanWindow>,
    /// First negative coefficient found, if any.
    pub witness: Option<NegativeTerm>,
    /// Whether the witness is unchanged in the window one wider; `None`
    /// when not checked.
    pub witness_stable: Option<bool>,
    /// Every configured window was scanned without finding one.
    pub exhausted: bool,
}

/// Scans `t`-tables on windows `k_start..=k_max`, stopping at the first
/// window that has a negative coefficient. With `certify` the witness is
/// recomputed on the window one wider.
pub fn positivity_search(
    ty: CartanType,
    n: usize,
    k_start: u32,
    k_max: u32,
    certify: bool,
    exec: Exec,
) -> Result<ScanReport> {
    let mut report =
        ScanReport { ty: ty.to_string(), n, windows: Vec::new(), witness: None, witness_stable: None, exhausted: false };
    for k in k_start..=k_max {
        let bar = BarTable::new(Cartan::new(ty, k), n, n, exec)?;
        let table = solve_table(&bar, true, exec)?;
        let found = scan_table(&table);
        report.windows.push(ScanWindow {
            cutoff: k,
            dim: bar.space().dim(),
            columns: table.columns().len(),
            negatives: found.len(),
        });
        if let Some(first) = found.into_iter().next() {
            if certify {
                let wider = canonical_t(&first.la, k + 1, exec)?;
                report.witness_stable = Some(wider.get(&first.mu) == first.poly);
            }
            report.witness = Some(first);
            return Ok(report);
        }
    }
    report.exhausted = true;
    Ok(report)
}

pub fn scan_table(table: &CoeffTable) -> Vec<NegativeTerm> {
    table
        .entries
        .iter()
        .filter_map(|((mu, la), p)| {
            let negative = p.negativity_report();
            (!negative.is_empty()).then(|| NegativeTerm { mu: mu.clone(), la: la.clone(), poly: p.clone(), negative })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeightTuple {
        s.parse().unwrap()
    }

    fn q(e: i32) -> LaurentPoly {
        LaurentPoly::monomial(e, 1)
    }

    #[test]
    fn example_columns() {
        let e = Exec::Sequential;
        let t = canonical_t(&w("1/2,-1/2"), 4, e).unwrap();
        let mut want = SparseVector::unit(w("1/2,-1/2"));
        want.add_term(w("-1/2,1/2"), &q(2));
        assert_eq!(t, want);
        let t = canonical_t(&w("3/2,-3/2"), 4, e).unwrap();
        let mut want = SparseVector::unit(w("3/2,-3/2"));
        want.add_term(w("1/2,-1/2"), &q(1));
        want.add_term(w("-1/2,1/2"), &q(1));
        want.add_term(w("-3/2,3/2"), &q(2));
        assert_eq!(t, want);
        assert_eq!(canonical_t(&w("-1/2,3/2"), 4, e).unwrap(), SparseVector::unit(w("-1/2,3/2")));
    }

    #[test]
    fn tables_meet_contract() {
        for ty in [CartanType::C, CartanType::B, CartanType::A] {
            let bar = BarTable::new(Cartan::new(ty, 3), 2, 2, Exec::Sequential).unwrap();
            for pos in [true, false] {
                solve_table(&bar, pos, Exec::Sequential).unwrap().check_contract().unwrap();
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let bar = BarTable::new(Cartan::new(CartanType::C, 2), 2, 2, Exec::Sequential).unwrap();
        let t = solve_table(&bar, true, Exec::Sequential).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"kind":"t","type":"C","n":2,"cutoff":2"#), "{s}");
        assert_eq!(serde_json::from_str::<CoeffTable>(&s).unwrap(), t);
    }

    #[test]
    fn pairing_is_delta() {
        let e = Exec::Sequential;
        let bar = BarTable::new(Cartan::new(CartanType::C, 3), 2, 2, e).unwrap();
        let t = solve_table(&bar, true, e).unwrap();
        let l = solve_table(&bar, false, e).unwrap();
        for la in t.columns() {
            for mu in t.columns() {
                let p = duality_pairing(&la, &mu, &t, &l).unwrap();
                let want = if la == mu { LaurentPoly::one() } else { LaurentPoly::zero() };
                assert_eq!(p, want, "{la} {mu}");
            }
        }
    }
}
