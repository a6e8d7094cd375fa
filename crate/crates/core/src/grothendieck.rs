//! Grothendieck-group bookkeeping at `q = 1`.
//!
//! Classes are finite integer combinations of labels in one of the standard
//! bases. Translation functors act on Verma classes by the combinatorial rule
//! (one factor `2` per moved entry) and are checked against the divided-power
//! action on the tensor space; on Euler classes they are checked against the
//! Pieri rule for characters. Outputs that rest on conjectures carry a flag.

use crate::canbasis::{self, CoeffTable, Kind};
use crate::quantumrep::{Cartan, CartanType, GenKind, Generator, TensorSpace};
use crate::superchar::{decompose_euler, euler_character, CharPoly, EulerRoute};
use crate::wedge;
use crate::weights::{window_tuples, RootVector};
use crate::{Error, Exec, Int, Lattice, Result, WeightTuple};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KBasis {
    Delta,
    Euler,
    Irreducible,
    Injective,
    Tilting,
}

/// A finite combination `Σ m_λ [X(λ)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElement {
    pub basis: KBasis,
    pub entries: BTreeMap<WeightTuple, Int>,
    pub conjectural: bool,
    /// Why a conjectural output should not be trusted as it stands.
    pub caveat: Option<String>,
}

impl KElement {
    pub fn zero(basis: KBasis) -> Self {
        KElement { basis, entries: BTreeMap::new(), conjectural: false, caveat: None }
    }

    pub fn unit(basis: KBasis, la: WeightTuple) -> Self {
        let mut e = Self::zero(basis);
        e.add(la, &Int::ONE);
        e
    }

    pub fn add(&mut self, la: WeightTuple, m: &Int) {
        let slot = self.entries.entry(la.clone()).or_default();
        *slot = &*slot + m;
        if slot.is_zero() {
            self.entries.remove(&la);
        }
    }

    pub fn get(&self, la: &WeightTuple) -> Int {
        self.entries.get(la).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Int) -> Self {
        let mut out = Self { entries: BTreeMap::new(), ..self.clone() };
        for (la, m) in &self.entries {
            out.add(la.clone(), &(m * c));
        }
        out
    }

    fn div_exact(&self, d: &Int) -> Result<Self> {
        let mut out = Self { entries: BTreeMap::new(), ..self.clone() };
        for (la, m) in &self.entries {
            let q = m.div_exact(d).ok_or_else(|| Error::NotDivisible(format!("[{la}] multiplicity {m} by {d}")))?;
            out.add(la.clone(), &q);
        }
        Ok(out)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            KBasis::Delta => "Δ",
            KBasis::Euler => "E",
            KBasis::Irreducible => "L",
            KBasis::Injective => "U",
            KBasis::Tilting => "T",
        };
        for (i, (la, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}[{sym}({la})]")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    weight: WeightTuple,
    mult: Int,
}

#[derive(Serialize, Deserialize)]
struct KElementJson {
    basis: KBasis,
    entries: Vec<EntryJson>,
    conjectural: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    caveat: Option<String>,
}

impl Serialize for KElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        KElementJson {
            basis: self.basis,
            entries: self.entries.iter().map(|(w, m)| EntryJson { weight: w.clone(), mult: m.clone() }).collect(),
            conjectural: self.conjectural,
            caveat: self.caveat.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = KElementJson::deserialize(d)?;
        let mut e = KElement::zero(j.basis);
        for EntryJson { weight, mult } in j.entries {
            e.add(weight, &mult);
        }
        e.conjectural = j.conjectural;
        e.caveat = j.caveat;
        Ok(e)
    }
}

/// Blocks are labelled by `wt(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockId(pub RootVector);

pub fn block_of(la: &WeightTuple) -> BlockId {
    BlockId(la.wt())
}

pub fn block_partition(lattice: Lattice, n: usize, k: u32) -> BTreeMap<BlockId, Vec<WeightTuple>> {
    let mut out: BTreeMap<BlockId, Vec<WeightTuple>> = BTreeMap::new();
    for la in window_tuples(lattice, n, k) {
        out.entry(block_of(&la)).or_default().push(la);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    E,
    F,
}

impl Direction {
    fn generator(self, i: i32, r: u32) -> Generator {
        match self {
            Direction::E => Generator::e_div(i, r),
            Direction::F => Generator::f_div(i, r),
        }
    }

    /// `-1` for `E` (entries go down by one), `+1` for `F`.
    fn step(self) -> i32 {
        match self {
            Direction::E => -1,
            Direction::F => 1,
        }
    }

    /// Sign of the block shift in units of `α_i`.
    fn shift(self) -> i64 {
        -(self.step() as i64)
    }
}

/// `α_i` read off the natural module of type C: the weight change of any
/// `E_i`-edge.
pub fn simple_root(i: i32) -> Result<RootVector> {
    let cartan = Cartan::new(CartanType::C, Cartan::cutoff_for_node(CartanType::C, i));
    let from = if i == 0 { 1 } else { 2 * i + 1 };
    let (to, _) = cartan
        .e_label(i, from, false)
        .ok_or_else(|| Error::Invariant(format!("no E_{i} edge out of {from}/2")))?;
    Ok(WeightTuple::half(&[to]).wt().sub(&WeightTuple::half(&[from]).wt()))
}

fn shifted_block(la: &WeightTuple, i: i32, times: i64) -> Result<RootVector> {
    let mut g = la.wt();
    g.add_all(&simple_root(i)?, times);
    Ok(g)
}

fn require_half(la: &WeightTuple) -> Result<()> {
    if la.lattice() != Lattice::HalfInt {
        return Err(Error::Incompatible(format!("{la}: translation functors act on the half-integer category")));
    }
    Ok(())
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(j + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// `[E_i^{(r)} Δ(λ)]` or `[F_i^{(r)} Δ(λ)]`: every `λ ∓ ε_{j_1} ∓ … ∓ ε_{j_r}`
/// over distinct positions whose weight is `wt(λ) ± rα_i`, each with
/// multiplicity `2^r`.
pub fn translate_verma(i: i32, r: u32, la: &WeightTuple, dir: Direction) -> Result<KElement> {
    require_half(la)?;
    let target = shifted_block(la, i, dir.shift() * r as i64)?;
    let mult = Int::pow2(r);
    let mut out = KElement::zero(KBasis::Delta);
    for js in subsets(la.n(), r as usize) {
        let mut d = la.doubled().to_vec();
        for &j in &js {
            d[j] += 2 * dir.step();
        }
        let mu = la.with_doubled(d)?;
        if mu.wt() == target {
            out.add(mu, &mult);
        }
    }
    Ok(out)
}

/// `2^r` times the divided power acting on `M_λ` at `q = 1`, on a window
/// wide enough for every target.
pub fn verma_divided_power(i: i32, r: u32, la: &WeightTuple, dir: Direction) -> Result<KElement> {
    require_half(la)?;
    let k = (la.min_cutoff() + 1).max(Cartan::cutoff_for_node(CartanType::C, i));
    let space = TensorSpace::new(Cartan::new(CartanType::C, k), la.n(), la.n())?;
    let img = space.specialized_action_at_one(dir.generator(i, r), &BTreeMap::from([(la.clone(), Int::ONE)]))?;
    let mut out = KElement::zero(KBasis::Delta);
    let mult = Int::pow2(r);
    for (mu, c) in img {
        out.add(mu, &(&c * &mult));
    }
    Ok(out)
}

/// One Euler-class step through characters: `ch E(λ) · ch V` (or `V*`),
/// decomposed and cut down to the block `wt(λ) ∓ α_i`.
pub fn translate_euler_pieri_step(i: i32, la: &WeightTuple, dir: Direction) -> Result<KElement> {
    require_half(la)?;
    let n = la.n();
    let mut v = CharPoly::zero(n);
    for a in 0..n {
        let mut e = vec![0; n];
        e[a] = 2 * dir.step();
        v.add_term(e, &Int::from(2i64));
    }
    let prod = euler_character(la, EulerRoute::SchurProduct)?.mul(&v);
    let target = shifted_block(la, i, dir.shift())?;
    let mut out = KElement::zero(KBasis::Euler);
    for (nu, m) in decompose_euler(&prod)? {
        if nu.wt() == target {
            out.add(nu, &m);
        }
    }
    Ok(out)
}

/// Twice the closed action on the `E`-basis at `q = 1`.
pub fn translate_euler_lemma_step(i: i32, la: &WeightTuple, dir: Direction) -> Result<KElement> {
    require_half(la)?;
    let cartan = Cartan::new(CartanType::C, (la.min_cutoff() + 1).max(Cartan::cutoff_for_node(CartanType::C, i)));
    let g = match dir {
        Direction::E => Generator::e(i),
        Direction::F => Generator::f(i),
    };
    let w = wedge::act_on_e(&cartan, g, la)?;
    let mut out = KElement::zero(KBasis::Euler);
    for (mu, c) in w.entries.iter() {
        out.add(mu.clone(), &(&c.eval_at_one() * &Int::from(2i64)));
    }
    Ok(out)
}

/// The `r`-fold composite of a one-step rule divided by `r!`, which is the
/// divided power at `q = 1`.
fn iterate_divided(
    r: u32,
    la: &WeightTuple,
    step: impl Fn(&WeightTuple) -> Result<KElement>,
) -> Result<KElement> {
    let mut cur = KElement::unit(KBasis::Euler, la.clone());
    let mut fact = Int::ONE;
    for m in 1..=r {
        let mut next = KElement::zero(KBasis::Euler);
        for (mu, c) in &cur.entries {
            for (nu, d) in step(mu)?.entries {
                next.add(nu, &(c * &d));
            }
        }
        cur = next;
        fact = &fact * &Int::from(m as i64);
    }
    cur.div_exact(&fact)
}

pub fn translate_euler_pieri(i: i32, r: u32, la: &WeightTuple, dir: Direction) -> Result<KElement> {
    iterate_divided(r, la, |mu| translate_euler_pieri_step(i, mu, dir))
}

pub fn translate_euler_lemma(i: i32, r: u32, la: &WeightTuple, dir: Direction) -> Result<KElement> {
    iterate_divided(r, la, |mu| translate_euler_lemma_step(i, mu, dir))
}

/// Outcome of [`verify_translation`] for one `(i, r, λ, direction)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    pub verma_checked: bool,
    pub euler_checked: bool,
    pub failures: Vec<String>,
}

impl TranslationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the Verma rule with the divided-power action, and (for dominant
/// `λ`) the Pieri route with the closed `E`-basis action. Every target must
/// also sit in the block `wt(λ) ± rα_i`.
pub fn translation_report(i: i32, r: u32, la: &WeightTuple, dir: Direction) -> Result<TranslationReport> {
    let mut rep = TranslationReport::default();
    let block = shifted_block(la, i, dir.shift() * r as i64)?;
    let rule = translate_verma(i, r, la, dir)?;
    let action = verma_divided_power(i, r, la, dir)?;
    rep.verma_checked = true;
    if rule != action {
        rep.failures.push(format!("Δ-side {dir:?}_{i}^({r}) on {la}: rule {rule}, action {action}"));
    }
    for mu in action.entries.keys() {
        if mu.wt() != block {
            rep.failures.push(format!("Δ-side target {mu} of {la} leaves the predicted block"));
        }
    }
    if la.is_strictly_decreasing() {
        let pieri = translate_euler_pieri(i, r, la, dir)?;
        let lemma = translate_euler_lemma(i, r, la, dir)?;
        rep.euler_checked = true;
        if pieri != lemma {
            rep.failures.push(format!("E-side {dir:?}_{i}^({r}) on {la}: Pieri {pieri}, closed action {lemma}"));
        }
        for mu in pieri.entries.keys() {
            if mu.wt() != block {
                rep.failures.push(format!("E-side target {mu} of {la} leaves the predicted block"));
            }
        }
    }
    Ok(rep)
}

pub fn verify_translation(i: i32, r: u32, la: &WeightTuple, dir: Direction) -> Result<bool> {
    Ok(translation_report(i, r, la, dir)?.ok())
}

/// Every `(i, r, λ, direction)` with `i ≤ max_i`, `1 ≤ r ≤ max_r`, `λ` in the
/// half-integer window `k`, rank `n`.
pub fn verify_translation_window(
    n: usize,
    k: u32,
    max_i: i32,
    max_r: u32,
    exec: Exec,
) -> Result<(usize, usize, Vec<String>)> {
    let mut jobs = Vec::new();
    for la in window_tuples(Lattice::HalfInt, n, k) {
        for i in 0..=max_i {
            for r in 1..=max_r.min(n as u32) {
                for dir in [Direction::E, Direction::F] {
                    jobs.push((i, r, la.clone(), dir));
                }
            }
        }
    }
    let reports = exec.try_map(&jobs, |(i, r, la, dir)| translation_report(*i, *r, la, *dir))?;
    let verma = reports.iter().filter(|r| r.verma_checked).count();
    let euler = reports.iter().filter(|r| r.euler_checked).count();
    let failures = reports.into_iter().flat_map(|r| r.failures).collect();
    Ok((verma, euler, failures))
}

/// Which conjectural tilting formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiltingFlavor {
    /// Type C on half-integer weights, from the `t`-table.
    CHalfInt,
    /// Mixed lattice `V^{⊗l} ⊗ W^{⊗m}`, from the `t^𝔞`-table.
    AMixed,
}

const C_TILTING_CAVEAT: &str =
    "conjectural; the type C canonical basis is known to have negative coefficients for n = 4 and n = 6, \
     so this formula needs correction in general";
const MIXED_CAVEAT: &str = "conjectural";

fn column_at_one(table: &CoeffTable, la: &WeightTuple, allow_provisional: bool) -> Result<KElement> {
    if !table.columns().contains(la) {
        return Err(Error::WindowEscape { needed: la.min_cutoff() });
    }
    let mut out = KElement::zero(KBasis::Delta);
    for ((mu, col), c) in &table.entries {
        if col != la {
            continue;
        }
        if !allow_provisional && !table.is_certified(mu, la) {
            return Err(Error::Uncertified(format!("{}_{{{mu},{la}}}", table.kind)));
        }
        out.add(mu.clone(), &c.eval_at_one());
    }
    Ok(out)
}

/// `Σ_μ t_{μλ}(1) [Δ(μ)]` from a certified table.
pub fn conjectural_tilting(
    la: &WeightTuple,
    flavor: TiltingFlavor,
    t: &CoeffTable,
    allow_provisional: bool,
) -> Result<KElement> {
    let (want, caveat) = match flavor {
        TiltingFlavor::CHalfInt => {
            if la.lattice() != Lattice::HalfInt || t.ty != CartanType::C {
                return Err(Error::Incompatible("C flavor needs a half-integer λ and a type C table".into()));
            }
            (Kind::T, C_TILTING_CAVEAT)
        }
        TiltingFlavor::AMixed => {
            if !matches!(la.lattice(), Lattice::Mixed { .. }) || t.ty != CartanType::AMixed {
                return Err(Error::Incompatible("mixed flavor needs a mixed λ and a mixed type A table".into()));
            }
            (Kind::TSector, MIXED_CAVEAT)
        }
    };
    if t.kind != want {
        return Err(Error::Incompatible(format!("expected a {want} table, got {}", t.kind)));
    }
    let mut out = column_at_one(t, la, allow_provisional)?;
    out.conjectural = true;
    out.caveat = Some(caveat.into());
    Ok(out)
}

/// `Σ_μ ℓ^𝔞_{μλ}(1) [Δ(μ)]` on the mixed lattice.
pub fn conjectural_irreducible_mixed(la: &WeightTuple, l: &CoeffTable, allow_provisional: bool) -> Result<KElement> {
    if !matches!(la.lattice(), Lattice::Mixed { .. }) || l.kind != Kind::LSector || l.ty != CartanType::AMixed {
        return Err(Error::Incompatible("need a mixed λ and a mixed type A ℓ-table".into()));
    }
    let mut out = column_at_one(l, la, allow_provisional)?;
    out.conjectural = true;
    out.caveat = Some(MIXED_CAVEAT.into());
    Ok(out)
}

/// Builds the certified table a conjectural formula reads from.
pub fn conjectural_table(la: &WeightTuple, k: u32, positive: bool, exec: Exec) -> Result<CoeffTable> {
    let (cartan, l) = crate::barinv::cartan_for(la, false, k)?;
    canbasis::certified_table(cartan, la.n(), l, positive, exec)
}

/// `⟨[L(-w₀λ)], [U(μ)]⟩ = δ_{λμ}`, extended bilinearly.
pub fn pairing_k(e: &KElement, f: &KElement) -> Result<Int> {
    if e.basis != KBasis::Irreducible || f.basis != KBasis::Injective {
        return Err(Error::Incompatible("pairing takes an L-class and a U-class".into()));
    }
    Ok(f.entries.iter().map(|(mu, m)| &e.get(&mu.neg_w0()) * m).sum())
}

/// Checks `Σ_ν t_{νλ}(1) ℓ_{-ν,-μ}(1) = δ_{λμ}` over every certified pair;
/// returns the number of pairs checked.
pub fn t_l_inverse_at_one(t: &CoeffTable, l: &CoeffTable) -> Result<usize> {
    if t.kind.positive() == l.kind.positive() || t.ty != l.ty {
        return Err(Error::Incompatible("need a t-table and an ℓ-table of one type".into()));
    }
    let mut tcols: BTreeMap<&WeightTuple, Vec<(&WeightTuple, Int)>> = BTreeMap::new();
    for ((nu, la), c) in &t.entries {
        tcols.entry(la).or_default().push((nu, c.eval_at_one()));
    }
    let mut lcols: BTreeMap<&WeightTuple, BTreeMap<&WeightTuple, Int>> = BTreeMap::new();
    for ((nu, mu), c) in &l.entries {
        lcols.entry(mu).or_default().insert(nu, c.eval_at_one());
    }
    let certified_t = |la: &WeightTuple| tcols[la].iter().all(|(nu, _)| t.is_certified(nu, la));
    let certified_l = |mu: &WeightTuple| lcols[mu].keys().all(|nu| l.is_certified(nu, mu));
    let mut checked = 0;
    for (la, tcol) in &tcols {
        if !certified_t(la) {
            continue;
        }
        for (nmu, lcol) in &lcols {
            if !certified_l(nmu) {
                continue;
            }
            let s: Int = tcol.iter().filter_map(|(nu, c)| lcol.get(&nu.neg()).map(|d| c * d)).sum();
            let want = if **la == nmu.neg() { Int::ONE } else { Int::ZERO };
            if s != want {
                return Err(Error::Invariant(format!("Σ t_(ν,{la})(1) ℓ_(-ν,{nmu})(1) = {s}")));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Matrix of a generator at `q = 1`, keyed `(row, column)`.
pub type KMatrix = BTreeMap<(WeightTuple, WeightTuple), Int>;

/// Which basis of the wedge a [`wedge_action_at_one`] matrix is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WedgeSide {
    /// `L_λ = Σ ℓ_{μλ} E_μ` over dominant `μ`.
    L,
    /// `U_λ = Σ u_{μλ} F_μ`.
    U,
}

type Columns = BTreeMap<WeightTuple, BTreeMap<WeightTuple, Int>>;

fn dominant_columns_at_one(table: &CoeffTable) -> Columns {
    let mut cols: Columns = BTreeMap::new();
    for ((mu, la), c) in &table.entries {
        if mu.is_wedge_dominant() && la.is_wedge_dominant() {
            let v = c.eval_at_one();
            if !v.is_zero() {
                cols.entry(la.clone()).or_default().insert(mu.clone(), v);
            }
        }
    }
    cols
}

/// Rewrites `v` in a unitriangular basis given by `cols`; `None` if a
/// needed basis vector is missing from the window.
fn peel(mut v: BTreeMap<WeightTuple, Int>, cols: &Columns) -> Option<BTreeMap<WeightTuple, Int>> {
    // off-diagonal terms of a column sit on one side of it in height
    let below = cols
        .iter()
        .flat_map(|(la, col)| col.keys().filter(move |mu| *mu != la).map(move |mu| mu.height() < la.height()))
        .next()
        .unwrap_or(true);
    let mut out = BTreeMap::new();
    while let Some(top) = if below {
        v.keys().max_by_key(|k| (k.height(), (*k).clone())).cloned()
    } else {
        v.keys().min_by_key(|k| (k.height(), (*k).clone())).cloned()
    } {
        let c = v[&top].clone();
        for (mu, d) in cols.get(&top)? {
            let slot = v.entry(mu.clone()).or_default();
            *slot = &*slot - &(&c * d);
            if slot.is_zero() {
                v.remove(mu);
            }
        }
        out.insert(top, c);
    }
    Some(out)
}

/// The generator `g` (an `E_i` or `F_i`) on the `L`- or `U`-basis of the
/// type C wedge at `q = 1`. Columns whose image leaves the window are
/// skipped.
pub fn wedge_action_at_one(g: Generator, side: WedgeSide, table: &CoeffTable) -> Result<KMatrix> {
    let want = match side {
        WedgeSide::L => Kind::L,
        WedgeSide::U => Kind::U,
    };
    if table.kind != want || table.ty != CartanType::C {
        return Err(Error::Incompatible(format!("need a type C {want} table")));
    }
    if !matches!(g.kind, GenKind::E | GenKind::F) || g.power != 1 {
        return Err(Error::Incompatible("only E_i and F_i".into()));
    }
    let cols = dominant_columns_at_one(table);
    let k = table.cutoff + 1;
    let cartan = Cartan::new(CartanType::C, k.max(Cartan::cutoff_for_node(CartanType::C, g.node)));
    let space = TensorSpace::new(cartan, table.n, table.n)?;
    let st = wedge::Straightener::new(wedge::Relations::C);
    let mut out = KMatrix::new();
    for (la, col) in &cols {
        let mut img: BTreeMap<WeightTuple, Int> = BTreeMap::new();
        let mut add = |mu: &WeightTuple, c: Int| {
            let slot = img.entry(mu.clone()).or_default();
            *slot = &*slot + &c;
            if slot.is_zero() {
                img.remove(mu);
            }
        };
        for (mu, c) in col {
            match side {
                WedgeSide::L => {
                    for (nu, d) in wedge::act_on_e(&cartan, g, mu)?.entries.iter() {
                        add(nu, c * &d.eval_at_one());
                    }
                }
                WedgeSide::U => {
                    let moved = space.tensor_action(g, &crate::SparseVector::unit(mu.w0()))?;
                    for (word, d) in moved.iter() {
                        let e = c * &d.eval_at_one();
                        for (nu, f) in st.straighten(word)?.iter() {
                            add(nu, &e * &f.eval_at_one());
                        }
                    }
                }
            }
        }
        if let Some(coords) = peel(img, &cols) {
            for (nu, c) in coords {
                out.insert((nu, la.clone()), c);
            }
        }
    }
    Ok(out)
}

/// Compares the `U`-basis matrix of `g` with the transpose of its `L`-basis
/// matrix under `⟨[L(-w₀λ)], [U(μ)]⟩ = δ`; returns the number of entries
/// compared and the mismatches.
pub fn adjoint_transpose_check(g: Generator, l: &CoeffTable, u: &CoeffTable) -> Result<(usize, Vec<String>)> {
    let ml = wedge_action_at_one(g, WedgeSide::L, l)?;
    let mu_cols: std::collections::BTreeSet<&WeightTuple> = ml.keys().map(|(_, c)| c).collect();
    let mm = wedge_action_at_one(g, WedgeSide::U, u)?;
    let mu_u: std::collections::BTreeSet<&WeightTuple> = mm.keys().map(|(_, c)| c).collect();
    let mut n = 0;
    let mut bad = Vec::new();
    let mut keys: std::collections::BTreeSet<(WeightTuple, WeightTuple)> = mm.keys().cloned().collect();
    keys.extend(ml.keys().map(|(a, b)| (b.neg_w0(), a.neg_w0())));
    for (nu, mu) in keys {
        // both columns must have been computed inside the window
        if !mu_u.contains(&mu) || !mu_cols.contains(&nu.neg_w0()) {
            continue;
        }
        let a = mm.get(&(nu.clone(), mu.clone())).cloned().unwrap_or_default();
        let b = ml.get(&(mu.neg_w0(), nu.neg_w0())).cloned().unwrap_or_default();
        n += 1;
        if a != b {
            bad.push(format!("U-side ({nu},{mu}) = {a}, L-side ({},{}) = {b}", mu.neg_w0(), nu.neg_w0()));
        }
    }
    Ok((n, bad))
}
