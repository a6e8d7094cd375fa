use proptest::prelude::*;
use qcanon_core::barinv::BarTable;
use qcanon_core::canbasis::{solve_table, CoeffTable};
use qcanon_core::grothendieck::{self, Direction};
use qcanon_core::quantumrep::{Cartan, CartanType};
use qcanon_core::superchar::{schur_jacobi_trudi, schur_laurent, CharPoly};
use qcanon_core::weights::{bruhat_leq, window_tuples};
use qcanon_core::{Exec, Int, Lattice, LaurentPoly, SparseVector, WeightTuple};
use std::sync::OnceLock;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
}

fn half_tuple(n: usize, k: i32) -> impl Strategy<Value = WeightTuple> {
    prop::collection::vec(-k..k, n).prop_map(|v| WeightTuple::half(&v.iter().map(|a| 2 * a + 1).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn poly_bar_is_a_ring_involution(a in poly(), b in poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().eval_at_one(), a.eval_at_one());
    }

    #[test]
    fn poly_exact_division(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn poly_positive_negative_split(a in poly()) {
        let p = a.positive_part();
        let n = a.negative_part();
        prop_assert!(p.in_q_zq());
        prop_assert!(n.in_qinv_zqinv());
        prop_assert_eq!(&(&p + &n) + &LaurentPoly::constant(a.coeff(0)), a);
    }

    #[test]
    fn int_matches_i128(a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (Int::from(a), Int::from(b));
        prop_assert_eq!((&x + &y).to_string(), (a as i128 + b as i128).to_string());
        prop_assert_eq!((&x * &y).to_string(), (a as i128 * b as i128).to_string());
        prop_assert_eq!((&x - &y).to_string(), (a as i128 - b as i128).to_string());
        let back = &(&x * &y) - &(&x * &y);
        prop_assert!(back.is_zero());
        prop_assert_eq!(back, Int::ZERO);
    }

    #[test]
    fn weight_round_trips(la in (1usize..5).prop_flat_map(|n| half_tuple(n, 5))) {
        let parsed: WeightTuple = la.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &la);
        prop_assert_eq!(la.neg().neg(), la.clone());
        prop_assert_eq!(la.neg_w0().neg_w0(), la.clone());
        prop_assert_eq!(la.w0().w0(), la.clone());
        // wt only sees the multiset of entries
        prop_assert_eq!(la.w0().wt(), la.wt());
        prop_assert_eq!(la.neg().wt(), {
            let mut z = la.wt();
            z.add_all(&la.wt(), -2);
            z
        });
    }

    #[test]
    fn bruhat_order_is_graded(mu in half_tuple(3, 3), la in half_tuple(3, 3)) {
        prop_assert!(bruhat_leq(&la, &la).unwrap());
        if mu != la && bruhat_leq(&mu, &la).unwrap() {
            prop_assert!(mu.height() < la.height());
            prop_assert!(!bruhat_leq(&la, &mu).unwrap());
            prop_assert_eq!(mu.wt(), la.wt());
        }
    }

    #[test]
    fn schur_routes_agree(parts in prop::collection::vec(0i32..4, 1..4), shift in -2i32..2, half in any::<bool>()) {
        let mut mu: Vec<i32> = parts;
        mu.sort_unstable_by(|a, b| b.cmp(a));
        let base = 2 * shift + i32::from(half);
        let doubled: Vec<i32> = mu.iter().map(|p| 2 * p + base).collect();
        prop_assert_eq!(schur_laurent(&doubled).unwrap(), schur_jacobi_trudi(&doubled).unwrap());
    }

    #[test]
    fn charpoly_products_commute(a in prop::collection::vec(-3i32..3, 2), b in prop::collection::vec(-3i32..3, 2), c in -5i64..5) {
        let x = &CharPoly::monomial(a, c) + &CharPoly::one(2);
        let y = &CharPoly::monomial(b, 1) + &CharPoly::var(2, 0);
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).div_exact(&y).unwrap(), x);
    }
}

struct Fixture {
    bar: BarTable,
    t: CoeffTable,
    l: CoeffTable,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let bar = BarTable::new(Cartan::new(CartanType::C, 3), 3, 3, Exec::default()).unwrap();
        let t = solve_table(&bar, true, Exec::default()).unwrap();
        let l = solve_table(&bar, false, Exec::default()).unwrap();
        Fixture { bar, t, l }
    })
}

fn random_vector(entries: Vec<(WeightTuple, LaurentPoly)>) -> SparseVector<WeightTuple> {
    let mut v = SparseVector::new();
    for (la, c) in entries {
        v.add_term(la, &c);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bar_is_an_antilinear_involution(entries in prop::collection::vec((half_tuple(3, 3), poly()), 0..4)) {
        let f = fixture();
        let v = random_vector(entries);
        let once = f.bar.apply(&v).unwrap();
        prop_assert_eq!(f.bar.apply(&once).unwrap(), v.clone());
        // antilinear: ψ(c v) = c̄ ψ(v)
        let c = LaurentPoly::monomial(3, 2);
        prop_assert_eq!(f.bar.apply(&v.scale(&c)).unwrap(), once.scale(&c.bar()));
    }

    #[test]
    fn canonical_columns_are_bar_invariant(la in half_tuple(3, 3)) {
        let f = fixture();
        let t = f.t.column(&la);
        prop_assert_eq!(f.bar.apply(&t).unwrap(), t);
        let l = f.l.column(&la);
        prop_assert_eq!(f.bar.apply(&l).unwrap(), l);
    }

    #[test]
    fn translations_match_divided_powers(la in (1usize..4).prop_flat_map(|n| half_tuple(n, 3)), i in 0i32..3, r in 1u32..3, e in any::<bool>()) {
        prop_assume!(r as usize <= la.n());
        let dir = if e { Direction::E } else { Direction::F };
        let rep = grothendieck::translation_report(i, r, &la, dir).unwrap();
        prop_assert!(rep.ok(), "{:?}", rep.failures);
    }
}

#[test]
fn window_has_expected_size() {
    assert_eq!(window_tuples(Lattice::HalfInt, 3, 3).len(), 216);
}
