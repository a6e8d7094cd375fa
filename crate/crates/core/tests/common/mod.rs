//! Closed forms for two factors of type C, transcribed term by term, used as
//! an oracle independent of the recursion.
#![allow(dead_code)]

use qcanon_core::{LaurentPoly, SparseVector, WeightTuple};

pub fn m(r: i32, s: i32) -> WeightTuple {
    WeightTuple::half(&[r, s])
}

pub fn q(e: i32) -> LaurentPoly {
    LaurentPoly::monomial(e, 1)
}

/// `(-q)^e`.
pub fn neg_q(e: i32) -> LaurentPoly {
    LaurentPoly::monomial(e, if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

pub fn q_minus_qinv() -> LaurentPoly {
    &q(1) - &q(-1)
}

pub fn truncate(v: &SparseVector<WeightTuple>, k: u32) -> SparseVector<WeightTuple> {
    v.filter(|mu| mu.in_window(k))
}

const FAR: i32 = 41;

/// `T_{(r,s)}` with doubled arguments.
pub fn example_t(r: i32, s: i32) -> SparseVector<WeightTuple> {
    let mut v = SparseVector::unit(m(r, s));
    if r + s != 0 {
        if r > s {
            v.add_term(m(s, r), &q(1));
        }
    } else if r < 0 {
        v.add_term(m(r - 2, s + 2), &q(1));
    } else if r == 1 {
        v.add_term(m(-1, 1), &q(2));
    } else {
        v.add_term(m(r - 2, s + 2), &q(1));
        v.add_term(m(-r + 2, r - 2), &q(1));
        v.add_term(m(-r, r), &q(2));
    }
    v
}

/// `ψ(M_{(r,s)})` with doubled arguments, summed out to a far cutoff.
pub fn example_bar(r: i32, s: i32) -> SparseVector<WeightTuple> {
    let d = q_minus_qinv();
    let mut v = SparseVector::unit(m(r, s));
    if r + s != 0 {
        if r > s {
            v.add_term(m(s, r), &d);
        }
    } else if r < 0 {
        let rr = s;
        for ss in (rr + 2..=FAR).step_by(2) {
            v.add_term(m(-ss, ss), &(&d * &neg_q((rr + 2 - ss) / 2)));
        }
    } else {
        v.add_term(m(-r, r), &(&q(1) * &d));
        for ss in (1..r).step_by(2) {
            v.add_term(m(ss, -ss), &(&d * &neg_q((ss + 2 - r) / 2)));
        }
        for ss in (-FAR..0).step_by(2) {
            v.add_term(m(ss, -ss), &(&(&q(-1) * &d) * &neg_q((ss + 2 - r) / 2)));
        }
    }
    v
}
