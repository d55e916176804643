//! Acceptance suite. Run with `--nocapture` to see one line per criterion.

mod common;

use common::*;
use genosc_core::classify::{classify, difference_table, VerdictKind};
use genosc_core::liealg::{
    lie_closure, reduce_against_basis, shiftop_commutator, shiftop_mul, shiftop_to_matrix, ClosureOptions,
    ClosureStatus, ShiftOp,
};
use genosc_core::oscillator::{commutator_diag, verify_relations};
use genosc_core::recurrence::{hermite, laguerre, moments_to_recurrence, symmetrize, MomentSequence, RecurrenceSpec};
use genosc_core::seqcore::rational::{format_rational, int, rat};
use genosc_core::{EpSeq, PolyN, Rational};
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Relative matrix tolerance for symbolic-vs-float comparisons.
const MATRIX_TOL: f64 = 1e-9;
const RELATION_TOL: f64 = 1e-10;

fn spans_generators(basis: &[ShiftOp]) -> bool {
    basis.len() == 4 && ShiftOp::generators().iter().all(|g| reduce_against_basis(g, basis).is_none())
}

fn ac1_laguerre_verdict() -> Outcome {
    for alpha in [int(0), rat(1, 2), int(1), rat(5, 2)] {
        let s = laguerre(&alpha).unwrap();
        let v = classify(&s).map_err(|e| e.to_string())?;
        ensure!(v.kind == VerdictKind::FiniteDim4, "alpha={}: {:?}", format_rational(&alpha), v.kind);
        ensure!(v.a0 == Some(&alpha + int(1)), "alpha={}: a0={:?}", format_rational(&alpha), v.a0);
        ensure!(v.a2 == Some(int(1)), "alpha={}: a2={:?}", format_rational(&alpha), v.a2);
        let c = lie_closure(&s, &ClosureOptions::default()).map_err(|e| e.to_string())?;
        ensure!(
            c.status == ClosureStatus::Closed && c.dim == 4,
            "alpha={}: closure {:?}",
            format_rational(&alpha),
            c.growth_log
        );
        ensure!(spans_generators(&c.basis), "alpha={}: basis does not span generators", format_rational(&alpha));
    }
    Ok("alpha in {0, 1/2, 1, 5/2}: FiniteDim4(a0=alpha+1, a2=1), closure dim 4".into())
}

fn ac2_quadratic_criterion() -> Outcome {
    let mut r = rng(2);
    let mut triples: Vec<(Rational, Rational, Rational)> = vec![(int(1), int(0), int(1))];
    while triples.len() < 51 {
        let a0 = rat(r.gen_range(1..=12), r.gen_range(1..=4));
        let a2 = rat(r.gen_range(0..=8), r.gen_range(1..=4));
        let a1 = if r.gen_bool(0.5) { &a0 + &a2 } else { rat(r.gen_range(0..=16), r.gen_range(1..=4)) };
        triples.push((a0, a1, a2));
    }
    let (mut finite, mut infinite) = (0, 0);
    for (a0, a1, a2) in &triples {
        let s = RecurrenceSpec::symmetric("triple", PolyN::new(vec![a0.clone(), a1.clone(), a2.clone()]));
        let label = format!("({}, {}, {})", format_rational(a0), format_rational(a1), format_rational(a2));
        let v = classify(&s).map_err(|e| format!("{label}: {e}"))?;
        let expect_finite = *a1 == a0 + a2;
        ensure!(v.is_finite() == expect_finite, "{label}: verdict {:?}", v.kind);
        let c = lie_closure(&s, &ClosureOptions::default()).map_err(|e| format!("{label}: {e}"))?;
        if expect_finite {
            finite += 1;
            ensure!(c.is_closed_dim4(), "{label}: closure {:?}", c.growth_log);
        } else {
            infinite += 1;
            ensure!(c.status == ClosureStatus::BudgetExceeded, "{label}: closure {:?}", c.status);
            ensure!(c.dim_at_depth(3).is_some_and(|d| d >= 5), "{label}: growth {:?}", c.growth_log);
        }
    }
    Ok(format!(
        "{} triples incl. n^2+1: {finite} finite (closed at 4), {infinite} infinite (dim >= 5 by depth 3)",
        triples.len()
    ))
}

fn ac3_closed_form_commutators() -> Outcome {
    for c in [int(1), rat(5, 2), int(7)] {
        let s = RecurrenceSpec::symmetric("p0", PolyN::constant(c.clone()));
        let got = commutator_diag(&s).map_err(|e| e.to_string())?.seq;
        ensure!(got == EpSeq::spike(&c * int(2)), "p=0, c={}: {got}", format_rational(&c));
    }
    for a0 in [int(1), int(2), rat(1, 2), int(5)] {
        let s = RecurrenceSpec::symmetric("p1", PolyN::new(vec![a0.clone(), int(1)]));
        let got = commutator_diag(&s).map_err(|e| e.to_string())?.seq;
        let expected = EpSeq::new(vec![int(2) * (int(1) + (&a0 - int(1)))], PolyN::constant(int(2)));
        ensure!(got == expected, "p=1, a0={}: {got}", format_rational(&a0));
        ensure!(got.constant_value().is_some() == a0.is_one(), "p=1, a0={}: constancy", format_rational(&a0));
    }
    let triples = [(1, 2, 1), (1, 0, 1), (3, 5, 2), (2, 9, 4), (1, 3, 1), (4, 4, 0)];
    for (a0, a1, a2) in triples {
        let (a0, a1, a2) = (int(a0), int(a1), int(a2));
        let s = RecurrenceSpec::symmetric("p2", PolyN::new(vec![a0.clone(), a1.clone(), a2.clone()]));
        let got = commutator_diag(&s).map_err(|e| e.to_string())?.seq;
        let tail = PolyN::new(vec![int(2) * (&a1 - &a2), int(4) * &a2]);
        let expected = EpSeq::new(vec![int(2) * &a0], tail.clone());
        ensure!(got == expected, "p=2 ({a0}, {a1}, {a2}): {got}");
        let spike = got.at(0) - tail.eval_at(0);
        ensure!(spike == int(2) * (&a0 - &a1 + &a2), "p=2 spike {spike}");
        ensure!(got.prefix().is_empty() == (a1 == &a0 + &a2), "p=2 ({a0}, {a1}, {a2}): spike presence");
    }
    Ok("p=0 spike 2c, p=1 constant iff a0=1, p=2 spike 2(a0-a1+a2) vanishes iff a1=a0+a2".into())
}

fn ac4_oscillator_relations() -> Outcome {
    let specs = [hermite(), laguerre(&int(0)).unwrap(), laguerre(&int(1)).unwrap()];
    let mut worst = 0.0f64;
    for s in &specs {
        for m in [8, 16, 32] {
            let reports = verify_relations(s, m, RELATION_TOL).map_err(|e| e.to_string())?;
            for r in &reports {
                ensure!(r.pass && r.max_residual <= RELATION_TOL, "{} M={m}: {r:?}", s.label);
                worst = worst.max(r.max_residual);
            }
            ensure!(
                reports[2].max_residual == 0.0 && reports[3].max_residual == 0.0,
                "{} M={m}: [N,a] residual nonzero",
                s.label
            );
        }
        let up = shiftop_commutator(&ShiftOp::number(), &ShiftOp::raising(), s);
        let down = shiftop_commutator(&ShiftOp::number(), &ShiftOp::lowering(), s);
        ensure!(up == ShiftOp::raising(), "{}: [N,a+] = {up}", s.label);
        ensure!(down == ShiftOp::lowering().scale(&int(-1)), "{}: [N,a-] = {down}", s.label);
    }
    Ok(format!("hermite, laguerre(0), laguerre(1) at M=8,16,32: max residual {worst:.2e}; [N,a±] exact"))
}

fn ac5_difference_spike() -> Outcome {
    for b0sq in [int(1), rat(3, 2), int(9)] {
        let s = RecurrenceSpec::symmetric("const", PolyN::constant(b0sq.clone()));
        let t = difference_table(&s, 3).map_err(|e| e.to_string())?;
        let mut sign = int(1);
        for j in 1..=3 {
            sign = -sign;
            let expected = EpSeq::spike(&sign * &b0sq);
            ensure!(t.rows[j] == expected, "b0^2={} j={j}: {}", format_rational(&b0sq), t.rows[j]);
        }
    }
    Ok("A^(j) = (-1)^j delta(n) b0^2 for j = 1, 2, 3".into())
}

fn ac6_symmetrization_invariance() -> Outcome {
    let corpus = corpus();
    let nonsym = corpus.iter().filter(|s| !s.is_symmetric()).count();
    ensure!(corpus.len() >= 20 && nonsym > 0 && nonsym < corpus.len(), "corpus mix");
    for s in &corpus {
        let a = classify(s).map_err(|e| e.to_string())?;
        let b = classify(&symmetrize(s)).map_err(|e| e.to_string())?;
        ensure!(a == b, "{}: {a:?} vs {b:?}", s.label);
    }
    Ok(format!("{} specs ({nonsym} nonsymmetric): verdicts identical field-for-field", corpus.len()))
}

fn monic_gram(mu: &[Rational], a: &[Rational], b2: &[Rational], upto: usize) -> Result<(), String> {
    let mut pis: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for n in 0..upto {
        let mut next = vec![Rational::zero()];
        next.extend(pis[n].iter().cloned());
        for (i, c) in pis[n].iter().enumerate() {
            next[i] -= &a[n] * c;
        }
        if n > 0 {
            for (i, c) in pis[n - 1].iter().enumerate() {
                next[i] -= &b2[n - 1] * c;
            }
        }
        pis.push(next);
    }
    let inner = |p: &[Rational], q: &[Rational]| -> Rational {
        let mut acc = Rational::zero();
        for (i, x) in p.iter().enumerate() {
            for (j, y) in q.iter().enumerate() {
                acc += x * y * &mu[i + j];
            }
        }
        acc
    };
    for i in 0..=upto {
        let norm: Rational = b2[..i].iter().fold(Rational::one(), |acc, b| acc * b);
        for j in 0..=upto {
            let g = inner(&pis[i], &pis[j]);
            // <P_i, P_j> = <pi_i, pi_j> / sqrt(norm_i norm_j) = delta_ij
            let ok = if i == j { g == norm } else { g.is_zero() };
            ensure!(ok, "<P_{i}, P_{j}> != delta");
        }
    }
    Ok(())
}

fn ac7_moment_pipeline() -> Outcome {
    let factorial: Vec<Rational> = (0..=8)
        .scan(int(1), |f, k| {
            let v = f.clone();
            *f *= int(k + 1);
            Some(v)
        })
        .collect();
    let r = moments_to_recurrence(&MomentSequence::new(factorial.clone()).unwrap(), 4).map_err(|e| e.to_string())?;
    for n in 0..4i64 {
        ensure!(r.a[n as usize] == int(2 * n + 1), "laguerre a_{n} = {}", r.a[n as usize]);
        ensure!(r.b2[n as usize] == int((n + 1) * (n + 1)), "laguerre b2_{n} = {}", r.b2[n as usize]);
    }
    monic_gram(&factorial, &r.a, &r.b2, 4)?;

    let gauss = vec![int(1), int(0), rat(1, 2), int(0), rat(3, 4), int(0), rat(15, 8), int(0), rat(105, 16)];
    let g = moments_to_recurrence(&MomentSequence::new(gauss.clone()).unwrap(), 4).map_err(|e| e.to_string())?;
    for n in 0..3i64 {
        ensure!(g.a[n as usize].is_zero(), "gauss a_{n} = {}", g.a[n as usize]);
        ensure!(g.b2[n as usize] == rat(n + 1, 2), "gauss b2_{n} = {}", g.b2[n as usize]);
    }
    monic_gram(&gauss, &g.a, &g.b2, 4)?;
    Ok("k! -> a=2n+1, b2=(n+1)^2 (n<4); gaussian -> a=0, b2=(n+1)/2 (n<3); Gram = I for i,j <= 4".into())
}

fn ac8_cross_layer() -> Outcome {
    let mut r = rng(8);
    let m = 16;
    let mut worst = 0.0f64;
    for case in 0..20 {
        let degree = r.gen_range(0..=2);
        let s = random_poly_spec(&mut r, degree);
        let a = random_shiftop(&mut r, 2);
        let b = random_shiftop(&mut r, 2);
        let c = random_shiftop(&mut r, 1);
        let to_m = |op: &ShiftOp| shiftop_to_matrix(op, &s, m).map_err(|e| e.to_string());
        let (ma, mb) = (to_m(&a)?, to_m(&b)?);
        let interior = m - a.max_shift().max(b.max_shift()) as usize;
        let product = to_m(&shiftop_mul(&a, &b, &s))?;
        let expected = ma.matmul(&mb);
        let bracket = to_m(&shiftop_commutator(&a, &b, &s))?;
        let expected_bracket = expected.sub(&mb.matmul(&ma));
        for (got, want) in [(&product, &expected), (&bracket, &expected_bracket)] {
            let scale = want.entries.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
            let res = got.max_residual(want, interior) / scale;
            worst = worst.max(res);
            ensure!(res <= MATRIX_TOL, "case {case}: relative residual {res:e}");
        }
        let br = |x: &ShiftOp, y: &ShiftOp| shiftop_commutator(x, y, &s);
        let jacobi = br(&br(&a, &b), &c).add(&br(&br(&b, &c), &a)).add(&br(&br(&c, &a), &b));
        ensure!(jacobi.is_zero(), "case {case}: Jacobi sum {jacobi}");
    }
    Ok(format!("20 random specs, M=16: worst relative residual {worst:.2e}; Jacobi exact"))
}

fn ac9_degree_barrier() -> Outcome {
    let mut r = rng(9);
    for case in 0..10 {
        let degree = 3 + case % 3;
        let s = random_poly_spec(&mut r, degree);
        let v = classify(&s).map_err(|e| e.to_string())?;
        ensure!(v.kind == VerdictKind::Infinite, "case {case} ({}): {:?}", s.b2, v.kind);
        let c = lie_closure(&s, &ClosureOptions::default()).map_err(|e| format!("case {case} ({}): {e}", s.b2))?;
        ensure!(c.status == ClosureStatus::BudgetExceeded, "case {case}: closure {:?}", c.status);
    }
    Ok("10 specs of tail degree 3..5: Infinite, closure exceeds budget".into())
}

#[test]
fn acceptance_suite() {
    let criteria: [Criterion; 9] = [
        ("AC1 laguerre verdict", ac1_laguerre_verdict),
        ("AC2 quadratic criterion", ac2_quadratic_criterion),
        ("AC3 closed-form commutators", ac3_closed_form_commutators),
        ("AC4 oscillator relations", ac4_oscillator_relations),
        ("AC5 difference-table spike", ac5_difference_spike),
        ("AC6 symmetrization invariance", ac6_symmetrization_invariance),
        ("AC7 moment pipeline", ac7_moment_pipeline),
        ("AC8 cross-layer consistency", ac8_cross_layer),
        ("AC9 degree barrier", ac9_degree_barrier),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
