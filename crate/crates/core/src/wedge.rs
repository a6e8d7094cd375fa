//! q-wedge quotients: straightening, the canonical basis `U_λ` by projection
//! and by inversion, the `E`-basis, and the cross-type comparisons.

use crate::barinv::BarTable;
use crate::canbasis::{solve_table, CoeffTable, Kind};
use crate::error::{Error, Result};
use crate::exactpoly::{LaurentPoly, SparseVector};
use crate::par::Exec;
use crate::quantumrep::{Cartan, CartanType, Generator, TensorSpace};
use crate::weights::{Lattice, WeightTuple};
use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

/// Which basis the keys of a [`WedgeVector`] refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WedgeBasis {
    F,
    U,
    E,
    L,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    pub basis: WedgeBasis,
    pub entries: SparseVector<WeightTuple>,
}

/// Relations defining the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relations {
    /// All four families of the type C ideal.
    C,
    /// Only `v_r ⊗ v_r` and `v_r ⊗ v_s + q v_s ⊗ v_r` with `r, s` of one sign.
    A,
}

/// Memoized rewriting of monomials into `F_λ` (`λ` strictly decreasing).
pub struct Straightener {
    rel: Relations,
    memo: RwLock<HashMap<Vec<i32>, SparseVector<WeightTuple>>>,
}

impl Straightener {
    pub fn new(rel: Relations) -> Self {
        Straightener { rel, memo: RwLock::new(HashMap::new()) }
    }

    /// `π(M_word)` as a combination of `F_λ`.
    pub fn straighten(&self, word: &WeightTuple) -> Result<SparseVector<WeightTuple>> {
        if word.lattice() != Lattice::HalfInt {
            return Err(Error::Incompatible("straightening is defined for half-integer words".into()));
        }
        self.go(word.doubled())
    }

    fn go(&self, w: &[i32]) -> Result<SparseVector<WeightTuple>> {
        if let Some(v) = self.memo.read().expect("memo lock").get(w) {
            return Ok(v.clone());
        }
        let v = self.rewrite(w)?;
        self.memo.write().expect("memo lock").insert(w.to_vec(), v.clone());
        Ok(v)
    }

    fn rewrite(&self, w: &[i32]) -> Result<SparseVector<WeightTuple>> {
        let Some(j) = w.windows(2).position(|p| p[0] >= p[1]) else {
            let mut la = w.to_vec();
            la.reverse();
            return Ok(SparseVector::unit(WeightTuple::half(&la)));
        };
        let (r, s) = (w[j], w[j + 1]);
        if r == s {
            return Ok(SparseVector::new());
        }
        let with = |a: i32, b: i32| {
            let mut x = w.to_vec();
            x[j] = a;
            x[j + 1] = b;
            x
        };
        let mut out = SparseVector::new();
        let mut add = |x: Vec<i32>, c: LaurentPoly| -> Result<()> {
            out.add_scaled(&self.go(&x)?, &c);
            Ok(())
        };
        let mq = |e: i32| LaurentPoly::monomial(e, -1);
        if r + s != 0 {
            if self.rel == Relations::A && (r > 0) != (s > 0) {
                return Err(Error::Incompatible(format!("no type A relation for v_{r}/2 ⊗ v_{s}/2")));
            }
            add(with(s, r), mq(1))?;
        } else {
            if self.rel == Relations::A {
                return Err(Error::Incompatible(format!("no type A relation for v_{r}/2 ⊗ v_{s}/2")));
            }
            if r > 1 {
                add(with(r - 2, s + 2), mq(1))?;
                add(with(s + 2, r - 2), mq(1))?;
            }
            add(with(s, r), mq(2))?;
        }
        Ok(out)
    }
}

/// `u` table by straightening `T_{w₀λ}` for every dominant `λ` of the window.
pub fn wedge_u_projection(t: &CoeffTable, rel: Relations, exec: Exec) -> Result<CoeffTable> {
    let st = Straightener::new(rel);
    let mut cols: BTreeMap<WeightTuple, SparseVector<WeightTuple>> = BTreeMap::new();
    for ((mu, la), c) in &t.entries {
        if la.is_strictly_decreasing() || la.w0().is_strictly_decreasing() {
            cols.entry(la.clone()).or_default().add_term(mu.clone(), c);
        }
    }
    let heads: Vec<WeightTuple> = cols.keys().filter(|la| la.w0().is_strictly_decreasing()).cloned().collect();
    let images = exec.try_map(&heads, |w0la| -> Result<SparseVector<WeightTuple>> {
        let mut out = SparseVector::new();
        for (nu, c) in cols[w0la].iter() {
            out.add_scaled(&st.straighten(nu)?, c);
        }
        Ok(out)
    })?;
    let kind = if rel == Relations::A { Kind::USector } else { Kind::U };
    let mut u = CoeffTable::new(kind, t.ty, t.n, t.cutoff);
    for (w0la, img) in heads.iter().zip(images) {
        u.insert_column(&w0la.w0(), &img);
    }
    Ok(u)
}

/// `π(T_{w₀λ})` for non-dominant `λ` should vanish; returns offending `λ`.
pub fn nondominant_projections(t: &CoeffTable, exec: Exec) -> Result<Vec<WeightTuple>> {
    let st = Straightener::new(Relations::C);
    let cols: Vec<WeightTuple> = t.columns().into_iter().filter(|la| !la.w0().is_strictly_decreasing()).collect();
    let bad = exec.try_map(&cols, |w0la| -> Result<Option<WeightTuple>> {
        let mut out = SparseVector::new();
        for (nu, c) in t.column(w0la).iter() {
            out.add_scaled(&st.straighten(nu)?, c);
        }
        Ok((!out.is_empty()).then(|| w0la.w0()))
    })?;
    Ok(bad.into_iter().flatten().collect())
}

fn dominant(la: &WeightTuple) -> bool {
    la.is_wedge_dominant()
}

/// `X = ℓ⁻¹` on dominant indices, column by column.
pub fn dominant_l_inverse(l: &CoeffTable) -> BTreeMap<WeightTuple, SparseVector<WeightTuple>> {
    let mut cols: BTreeMap<WeightTuple, Vec<(WeightTuple, LaurentPoly)>> = BTreeMap::new();
    for ((mu, la), c) in &l.entries {
        if dominant(mu) && dominant(la) && mu != la {
            cols.entry(la.clone()).or_default().push((mu.clone(), c.clone()));
        }
    }
    let mut out = BTreeMap::new();
    for la in l.columns().into_iter().filter(dominant) {
        let mut acc: BTreeMap<(i64, WeightTuple), LaurentPoly> = BTreeMap::new();
        let mut x = SparseVector::unit(la.clone());
        let push = |acc: &mut BTreeMap<(i64, WeightTuple), LaurentPoly>, nu: &WeightTuple, xv: &LaurentPoly| {
            for (mu, c) in cols.get(nu).map(Vec::as_slice).unwrap_or(&[]) {
                *acc.entry((mu.height(), mu.clone())).or_default() += &(c * xv);
            }
        };
        push(&mut acc, &la, &LaurentPoly::one());
        while let Some(((_, mu), a)) = acc.pop_last() {
            if a.is_zero() {
                continue;
            }
            let xm = -&a;
            push(&mut acc, &mu, &xm);
            x.add_term(mu, &xm);
        }
        out.insert(la, x);
    }
    out
}

/// `u` table from the dominant `ℓ` block: `u_{-w₀λ,-w₀μ}(q⁻¹) = (ℓ⁻¹)_{μλ}`.
pub fn wedge_u_inversion(l: &CoeffTable) -> Result<CoeffTable> {
    if !matches!(l.kind, Kind::L | Kind::LSector) {
        return Err(Error::Incompatible(format!("inversion needs an ℓ table, got {}", l.kind)));
    }
    let kind = if l.kind == Kind::L { Kind::U } else { Kind::USector };
    let mut u = CoeffTable::new(kind, l.ty, l.n, l.cutoff);
    for (la, col) in dominant_l_inverse(l) {
        for (mu, c) in col.iter() {
            u.entries.insert((la.neg_w0(), mu.neg_w0()), c.bar());
        }
    }
    Ok(u)
}

/// The reading suggested by "ℓ is the inverse of u" on the same indices.
pub fn wedge_u_direct_inverse(l: &CoeffTable) -> CoeffTable {
    let mut u = CoeffTable::new(Kind::U, l.ty, l.n, l.cutoff);
    for (la, col) in dominant_l_inverse(l) {
        for (mu, c) in col.iter() {
            u.entries.insert((mu.clone(), la.clone()), c.clone());
        }
    }
    u
}

/// `E_λ = Σ_μ (ℓ⁻¹)_{μλ} L_μ`.
pub fn e_basis(la: &WeightTuple, l: &CoeffTable) -> Result<WedgeVector> {
    if !dominant(la) {
        return Err(Error::InvalidWeight(format!("{la} is not dominant")));
    }
    let inv = dominant_l_inverse(l);
    let col = inv.get(la).ok_or(Error::WindowEscape { needed: la.min_cutoff() })?;
    Ok(WedgeVector { basis: WedgeBasis::L, entries: col.clone() })
}

/// `E_λ` written against the monomials `M_ν` of the window.
pub fn e_basis_monomials(la: &WeightTuple, l: &CoeffTable) -> Result<SparseVector<WeightTuple>> {
    let e = e_basis(la, l)?;
    let mut lcols: BTreeMap<WeightTuple, SparseVector<WeightTuple>> = BTreeMap::new();
    for ((nu, mu), c) in &l.entries {
        if e.entries.get_ref(mu).is_some() {
            lcols.entry(mu.clone()).or_default().add_term(nu.clone(), c);
        }
    }
    let mut out = SparseVector::new();
    for (mu, c) in e.entries.iter() {
        out.add_scaled(&lcols[mu], c);
    }
    Ok(out)
}

/// `E_i E_λ` or `F_i E_λ` in the `E`-basis, from the closed action on
/// dominant indices (type C).
pub fn act_on_e(cartan: &Cartan, g: Generator, la: &WeightTuple) -> Result<WedgeVector> {
    use crate::quantumrep::GenKind;
    if !dominant(la) {
        return Err(Error::InvalidWeight(format!("{la} is not dominant")));
    }
    let i = g.node;
    let d = la.doubled();
    let mut out = SparseVector::new();
    for r in 0..d.len() {
        let (target, exp) = match g.kind {
            GenKind::E => (
                cartan.e_label(i, d[r], false),
                -d[r + 1..].iter().map(|x| cartan.pair(i, *x, false)).sum::<i32>(),
            ),
            GenKind::F => (
                cartan.f_label(i, d[r], false),
                d[..r].iter().map(|x| cartan.pair(i, *x, false)).sum::<i32>(),
            ),
            _ => return Err(Error::Incompatible("only E_i and F_i act by the closed formula".into())),
        };
        let Some((y, c)) = target else { continue };
        let mut nd = d.to_vec();
        nd[r] = y;
        let mu = la.with_doubled(nd)?;
        if dominant(&mu) {
            out.add_term(mu, &c.shift(exp));
        }
    }
    Ok(WedgeVector { basis: WedgeBasis::E, entries: out })
}

/// The same action read off the monomial expansion of `E_λ`: apply the
/// tensor action and keep the coefficients of dominant monomials, which are
/// the `E`-coordinates since `(E_λ, M_μ) = δ`.
pub fn act_on_e_oracle(space: &TensorSpace, g: Generator, la: &WeightTuple, l: &CoeffTable) -> Result<WedgeVector> {
    let v = e_basis_monomials(la, l)?;
    let w = space.tensor_action(g, &v)?;
    Ok(WedgeVector { basis: WedgeBasis::E, entries: w.filter(dominant) })
}

/// Outcome of comparing two coefficient tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Comparison {
    pub compared: usize,
    pub mismatches: Vec<(WeightTuple, WeightTuple, LaurentPoly, LaurentPoly)>,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Entrywise comparison of `a` and `b` after re-indexing and a coefficient
/// map on `a`; only keys whose image lies in `b`'s window are compared.
pub fn compare_tables(
    a: &CoeffTable,
    b: &CoeffTable,
    index: impl Fn(&WeightTuple) -> Option<WeightTuple>,
    coeff: impl Fn(&LaurentPoly) -> LaurentPoly,
) -> Comparison {
    let mut cmp = Comparison::default();
    let mut seen = std::collections::BTreeSet::new();
    let cols_a = a.columns();
    let cols_b = b.columns();
    for ((mu, la), c) in &a.entries {
        let (Some(mu2), Some(la2)) = (index(mu), index(la)) else { continue };
        if !cols_b.contains(&la2) || !mu2.in_window(b.cutoff) {
            continue;
        }
        seen.insert((mu2.clone(), la2.clone()));
        let want = coeff(c);
        let got = b.entry(&mu2, &la2);
        cmp.compared += 1;
        if got != want {
            cmp.mismatches.push((mu.clone(), la.clone(), want, got));
        }
    }
    for ((mu2, la2), got) in &b.entries {
        if seen.contains(&(mu2.clone(), la2.clone())) {
            continue;
        }
        let back = cols_a.iter().find(|la| index(la).as_ref() == Some(la2));
        if let Some(la) = back {
            if let Some(mu) = a.entries.keys().map(|(m, _)| m).find(|m| index(m).as_ref() == Some(mu2)) {
                cmp.compared += 1;
                cmp.mismatches.push((mu.clone(), la.clone(), LaurentPoly::zero(), got.clone()));
            }
        }
    }
    cmp
}

/// The three `u` tables on a half-integer window: C by projection, C by
/// inversion, and the sector table from the type A engine.
pub struct WedgeTables {
    pub u_c_projection: CoeffTable,
    pub u_c_inversion: CoeffTable,
    pub u_a: CoeffTable,
    pub l_c: CoeffTable,
}

pub fn wedge_tables(n: usize, k: u32, exec: Exec) -> Result<WedgeTables> {
    let c = BarTable::new(Cartan::new(CartanType::C, k), n, n, exec)?;
    let t_c = solve_table(&c, true, exec)?;
    let l_c = solve_table(&c, false, exec)?;
    let a = BarTable::new(Cartan::new(CartanType::A, k), n, n, exec)?;
    let t_a = solve_table(&a, true, exec)?;
    Ok(WedgeTables {
        u_c_projection: wedge_u_projection(&t_c, Relations::C, exec)?,
        u_c_inversion: wedge_u_inversion(&l_c)?,
        u_a: wedge_u_projection(&t_a, Relations::A, exec)?,
        l_c,
    })
}

/// `u^𝔞 = u` on the half-integer window `k`.
pub fn compare_a_vs_c(n: usize, k: u32, exec: Exec) -> Result<Comparison> {
    let w = wedge_tables(n, k, exec)?;
    Ok(compare_tables(&w.u_a, &w.u_c_projection, |x| Some(x.clone()), Clone::clone))
}

/// Type B tables on the integer window `k + 1`, which holds every `λ♯`.
pub struct TypeBWedge {
    pub l_b: CoeffTable,
    pub u_b: CoeffTable,
}

pub fn type_b_wedge(n: usize, k: u32, exec: Exec) -> Result<TypeBWedge> {
    let b = BarTable::new(Cartan::new(CartanType::B, k + 1), n, n, exec)?;
    let l_b = solve_table(&b, false, exec)?;
    let u_b = wedge_u_inversion(&l_b)?;
    Ok(TypeBWedge { l_b, u_b })
}

/// `u^𝔞_{μλ}(t²) = u_{μ♯λ♯}(t)` and `ℓ_{μλ}(t²) = ℓ_{μ♯λ♯}(t)` on dominant indices.
pub fn compare_a_vs_b(n: usize, k: u32, exec: Exec) -> Result<(Comparison, Comparison)> {
    let w = wedge_tables(n, k, exec)?;
    let b = type_b_wedge(n, k, exec)?;
    let sharp = |x: &WeightTuple| x.sharp().ok();
    let dil = |p: &LaurentPoly| p.dilate(2);
    let u = compare_tables(&w.u_a, &b.u_b, sharp, dil);
    let mut l_dom = w.l_c.clone();
    l_dom.entries.retain(|(mu, la), _| dominant(mu) && dominant(la));
    let mut lb_dom = b.l_b.clone();
    lb_dom.entries.retain(|(mu, la), _| {
        dominant(mu) && dominant(la) && mu.zero_count() == 0 && la.zero_count() == 0 && la.in_window(k + 1)
    });
    let l = compare_tables(&l_dom, &lb_dom, sharp, dil);
    Ok((u, l))
}
