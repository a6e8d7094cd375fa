use qcanon_core::canbasis::certified_table;
use qcanon_core::quantumrep::{Cartan, CartanType, Generator, TensorSpace};
use qcanon_core::wedge::{act_on_e, act_on_e_oracle, Relations, Straightener};
use qcanon_core::weights::window_tuples;
use qcanon_core::{Exec, Lattice, LaurentPoly, SparseVector, WeightTuple};

#[test]
fn closed_e_action_matches_tensor_action() {
    for (n, k) in [(1, 5), (2, 5), (3, 3)] {
        let c = Cartan::new(CartanType::C, k);
        let l = certified_table(c, n, n, false, Exec::default()).unwrap();
        let space = TensorSpace::new(Cartan::new(CartanType::C, k + 1), n, n).unwrap();
        let mut checked = 0;
        for la in window_tuples(Lattice::HalfInt, n, k - 1).into_iter().filter(|x| x.is_wedge_dominant()) {
            for i in 0..(k as i32 - 1) {
                for g in [Generator::e(i), Generator::f(i)] {
                    let closed = act_on_e(&c, g, &la).unwrap();
                    let oracle = act_on_e_oracle(&space, g, &la, &l).unwrap();
                    // the oracle only sees what the window sees
                    let seen = closed.entries.filter(|mu| mu.in_window(k));
                    let want = oracle.entries.filter(|mu| mu.in_window(k));
                    assert_eq!(seen, want, "n={n} {g:?} on E_{la}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}

/// One rewriting step at position `j`, written out independently of the
/// straightener's own order.
fn step(w: &[i32], j: usize) -> Vec<(Vec<i32>, LaurentPoly)> {
    let (r, s) = (w[j], w[j + 1]);
    let with = |a: i32, b: i32| {
        let mut x = w.to_vec();
        x[j] = a;
        x[j + 1] = b;
        x
    };
    if r == s {
        return vec![];
    }
    let mq = |e| LaurentPoly::monomial(e, -1);
    if r + s != 0 {
        return vec![(with(s, r), mq(1))];
    }
    let mut out = vec![(with(s, r), mq(2))];
    if r > 1 {
        out.push((with(r - 2, s + 2), mq(1)));
        out.push((with(s + 2, r - 2), mq(1)));
    }
    out
}

#[test]
fn straightening_is_confluent() {
    let st = Straightener::new(Relations::C);
    for w in window_tuples(Lattice::HalfInt, 3, 3) {
        let d = w.doubled();
        let direct = st.straighten(&w).unwrap();
        for j in (0..d.len() - 1).filter(|&j| d[j] >= d[j + 1]) {
            let mut via = SparseVector::new();
            for (x, c) in step(d, j) {
                via.add_scaled(&st.straighten(&WeightTuple::half(&x)).unwrap(), &c);
            }
            assert_eq!(via, direct, "word {w}, rewriting at {j}");
        }
    }
}
