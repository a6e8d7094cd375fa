use qcanon_core::canbasis::certified_table;
use qcanon_core::grothendieck::*;
use qcanon_core::quantumrep::{Cartan, CartanType, Generator};
use qcanon_core::wedge::{wedge_u_projection, Relations};
use qcanon_core::{Exec, Int, WeightTuple};

fn w(s: &str) -> WeightTuple {
    s.parse().unwrap()
}

#[test]
fn u_action_is_transpose_of_l_action() {
    for (n, k) in [(1, 4), (2, 4), (3, 3)] {
        let c = Cartan::new(CartanType::C, k);
        let l = certified_table(c, n, n, false, Exec::default()).unwrap();
        let t = certified_table(c, n, n, true, Exec::default()).unwrap();
        let u = wedge_u_projection(&t, Relations::C, Exec::default()).unwrap();
        let mut total = 0;
        for i in 0..=2 {
            for g in [Generator::e(i), Generator::f(i)] {
                let (m, bad) = adjoint_transpose_check(g, &l, &u).unwrap();
                assert!(bad.is_empty(), "n={n} {g:?}: {bad:?}");
                total += m;
            }
        }
        assert!(total > 0, "n={n}: nothing compared");
    }
}

#[test]
fn translation_shifts_blocks() {
    for la in ["1/2,-1/2", "3/2,1/2,-1/2", "5/2,-3/2"] {
        let la = w(la);
        for i in 0..=2 {
            for dir in [Direction::E, Direction::F] {
                let out = translate_verma(i, 1, &la, dir).unwrap();
                let mut want = la.wt();
                let sign = if dir == Direction::E { 1 } else { -1 };
                want.add_all(&simple_root(i).unwrap(), sign);
                assert!(out.entries.keys().all(|mu| mu.wt() == want));
            }
        }
    }
}

#[test]
fn conjectural_outputs_are_flagged() {
    let la = w("1,-1*");
    let t = conjectural_table(&la, 3, true, Exec::default()).unwrap();
    let l = conjectural_table(&la, 3, false, Exec::default()).unwrap();
    let tt = conjectural_tilting(&la, TiltingFlavor::AMixed, &t, false).unwrap();
    let ll = conjectural_irreducible_mixed(&la, &l, false).unwrap();
    assert!(tt.conjectural && ll.conjectural);
    assert_eq!(tt.get(&la), Int::ONE);
    assert_eq!(ll.get(&la), Int::ONE);
    assert!(conjectural_tilting(&la, TiltingFlavor::CHalfInt, &t, false).is_err());
}

#[test]
fn mixed_tilting_matches_single_column_solver() {
    // l = n: only plain factors
    for la in [WeightTuple::mixed(&[1, 0], 2).unwrap(), WeightTuple::mixed(&[0, 1, -1], 3).unwrap()] {
        let t = conjectural_table(&la, 3, true, Exec::default()).unwrap();
        let out = conjectural_tilting(&la, TiltingFlavor::AMixed, &t, false).unwrap();
        let (col, _) = qcanon_core::canbasis::mixed_dual_canonical(&la, 3, Exec::default()).unwrap();
        let direct: std::collections::BTreeMap<_, _> = col
            .iter()
            .map(|(mu, c)| (mu.clone(), c.eval_at_one()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        assert_eq!(out.entries, direct, "{la}");
    }
}

#[test]
fn t_and_l_are_inverse_at_one() {
    for (n, k) in [(1, 4), (2, 3), (3, 3)] {
        let c = Cartan::new(CartanType::C, k);
        let t = certified_table(c, n, n, true, Exec::default()).unwrap();
        let l = certified_table(c, n, n, false, Exec::default()).unwrap();
        assert!(t_l_inverse_at_one(&t, &l).unwrap() > 0);
    }
}

#[test]
fn provisional_entries_are_refused() {
    let la = w("1/2,-1/2");
    let mut t = conjectural_table(&la, 3, true, Exec::default()).unwrap();
    t.provisional.insert((w("-1/2,1/2"), la.clone()));
    let err = conjectural_tilting(&la, TiltingFlavor::CHalfInt, &t, false).unwrap_err();
    assert!(matches!(err, qcanon_core::Error::Uncertified(_)));
    assert!(conjectural_tilting(&la, TiltingFlavor::CHalfInt, &t, true).is_ok());
}
