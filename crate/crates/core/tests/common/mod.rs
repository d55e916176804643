#![allow(dead_code)]

use genosc_core::liealg::ShiftOp;
use genosc_core::recurrence::{hermite, laguerre, BSign, RecurrenceSpec};
use genosc_core::seqcore::rational::{int, rat};
use genosc_core::{EpSeq, PolyN, Rational};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn ep(prefix: &[i64], tail: &[i64]) -> EpSeq {
    EpSeq::new(ints(prefix), PolyN::from_ints(tail))
}

pub fn sym(label: &str, coeffs: Vec<Rational>) -> RecurrenceSpec {
    RecurrenceSpec::symmetric(label, PolyN::new(coeffs))
}

/// `p/q` with `|p| ≤ 12`, `1 ≤ q ≤ 6`.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

pub fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..=12, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

pub fn arb_poly(max_len: usize) -> impl Strategy<Value = PolyN> {
    prop::collection::vec(small_rational(), 0..=max_len).prop_map(PolyN::new)
}

pub fn arb_epseq(max_prefix: usize, max_len: usize) -> impl Strategy<Value = EpSeq> {
    (prop::collection::vec(small_rational(), 0..=max_prefix), arb_poly(max_len)).prop_map(|(p, t)| EpSeq::new(p, t))
}

/// Valid specs: positive constant term, nonnegative higher coefficients,
/// optional positive exceptional prefix, random diagonal and sign.
pub fn arb_valid_spec(max_degree: usize) -> impl Strategy<Value = RecurrenceSpec> {
    (
        positive_rational(),
        prop::collection::vec(nonneg_rational(), 0..=max_degree),
        prop::collection::vec(positive_rational(), 0..=1),
        arb_poly(2),
        any::<bool>(),
    )
        .prop_map(|(c0, rest, prefix, a, neg)| {
            let mut coeffs = vec![c0];
            coeffs.extend(rest);
            RecurrenceSpec::new(
                "random",
                EpSeq::new(prefix, PolyN::new(coeffs)),
                EpSeq::poly(a),
                if neg { BSign::Negative } else { BSign::Positive },
            )
        })
}

/// Polynomial `b2` spec, seeded, with tail degree exactly `degree`.
pub fn random_poly_spec(r: &mut ChaCha8Rng, degree: usize) -> RecurrenceSpec {
    let mut coeffs = vec![rat(r.gen_range(1..=9), r.gen_range(1..=4))];
    for i in 1..=degree {
        let lo = if i == degree { 1 } else { 0 };
        coeffs.push(rat(r.gen_range(lo..=6), r.gen_range(1..=4)));
    }
    let a = if r.gen_bool(0.5) {
        EpSeq::poly(PolyN::new(vec![rat(r.gen_range(-5..=5), 2), int(r.gen_range(0..=2))]))
    } else {
        EpSeq::zero()
    };
    RecurrenceSpec::new(format!("deg{degree}"), EpSeq::poly(PolyN::new(coeffs)), a, BSign::Positive)
}

/// Shift operator with shifts in `-max_shift..=max_shift`, small coefficients.
pub fn arb_shiftop(max_shift: i64) -> impl Strategy<Value = ShiftOp> {
    prop::collection::vec((-max_shift..=max_shift, arb_epseq(1, 2)), 1..=2)
        .prop_map(|terms| terms.into_iter().fold(ShiftOp::zero(), |acc, (k, c)| acc.add(&ShiftOp::term(k, c))))
}

/// Fixed mixed corpus: finite and infinite, symmetric and not.
pub fn corpus() -> Vec<RecurrenceSpec> {
    let mut out = vec![
        hermite(),
        laguerre(&int(0)).unwrap(),
        laguerre(&rat(1, 2)).unwrap(),
        laguerre(&int(1)).unwrap(),
        laguerre(&rat(5, 2)).unwrap(),
        laguerre(&rat(-1, 3)).unwrap(),
        sym("const-1", ints(&[1])),
        sym("const-5/2", vec![rat(5, 2)]),
        sym("n+1", ints(&[1, 1])),
        sym("n+2", ints(&[2, 1])),
        sym("n+1/3", vec![rat(1, 3), int(1)]),
        sym("n^2+1", ints(&[1, 0, 1])),
        sym("n^2+3n+2", ints(&[2, 3, 1])),
        sym("n^2+2n+3", ints(&[3, 2, 1])),
        sym("(2+3n)(1+n)", ints(&[2, 5, 3])),
        sym("n^3+1", ints(&[1, 0, 0, 1])),
        sym("(n+1)^3", ints(&[1, 3, 3, 1])),
        RecurrenceSpec::new("spike+(n+1)", ep(&[3], &[1, 1]), EpSeq::zero(), BSign::Positive),
        RecurrenceSpec::new(
            "(n+1)/2 with a=n",
            EpSeq::poly(PolyN::new(vec![rat(1, 2), rat(1, 2)])),
            ep(&[], &[0, 1]),
            BSign::Negative,
        ),
        RecurrenceSpec::new("n^2+1 with a=3", ep(&[], &[1, 0, 1]), ep(&[], &[3]), BSign::Positive),
        RecurrenceSpec::new("(1+n)(1+2n) spiky a", ep(&[], &[1, 3, 2]), ep(&[7, -1], &[0, 2]), BSign::Negative),
        RecurrenceSpec::new("const-2 with a=n^2", ep(&[], &[2]), ep(&[], &[0, 0, 1]), BSign::Positive),
    ];
    out.push(sym("(1/2+n/4)(1+n)", vec![rat(1, 2), rat(3, 4), rat(1, 4)]));
    out
}

pub fn random_epseq(r: &mut ChaCha8Rng) -> EpSeq {
    let prefix_len = r.gen_range(0..=1);
    let prefix = (0..prefix_len).map(|_| rat(r.gen_range(-6..=6), r.gen_range(1..=3))).collect();
    let deg = r.gen_range(0..=2);
    let tail = (0..=deg).map(|_| rat(r.gen_range(-6..=6), r.gen_range(1..=3))).collect();
    EpSeq::new(prefix, PolyN::new(tail))
}

/// One or two terms with shifts in `-max_shift..=max_shift`.
pub fn random_shiftop(r: &mut ChaCha8Rng, max_shift: i64) -> ShiftOp {
    let terms = r.gen_range(1..=2);
    (0..terms).fold(ShiftOp::zero(), |acc, _| {
        let k = r.gen_range(-max_shift..=max_shift);
        acc.add(&ShiftOp::term(k, random_epseq(r)))
    })
}
