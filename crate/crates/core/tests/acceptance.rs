//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use relgw::counts::{
    b_d_decomposition, b_d_via_restriction, cubic_count_conjectural, multiple_cover_contribution,
    sextactic_count,
};
use relgw::descendants::reconstruction::Reconstructor;
use relgw::descendants::{one_point_descendant, one_point_line, two_point_line, DescendantQuery};
use relgw::gathmann::{max_contact_lines_closed, Engine, InvariantKey};
use relgw::interp::{divisible_by_power_of_d, fit_and_verify, fit_t_polynomial, lagrange, SamplePoint};
use relgw::qrationals::{binomial, int, ratio, stirling_first_signed};
use relgw::{Rational, RationalPolynomial};

type Outcome = Result<(), String>;

macro_rules! ensure_eq {
    ($left:expr, $right:expr, $($ctx:tt)+) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{}: got {}, want {}", format!($($ctx)+), l, r));
        }
    }};
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn poly_ints(cs: &[i64]) -> RationalPolynomial {
    RationalPolynomial::from_integers(cs)
}

fn at(d: u32) -> Rational {
    int(d as i64)
}

fn stirling() -> Outcome {
    for (n, k, want) in [(3, 1, 2), (3, 2, -3), (5, 1, 24), (5, 2, -50), (5, 3, 35)] {
        ensure_eq!(stirling_first_signed(n, k), BigInt::from(want), "S({n},{k})");
    }
    // x(x+1)...(x+n-1) = sum (-1)^(n-k) S(n,k) x^k
    for n in 0..=12usize {
        let mut rising = poly_ints(&[1]);
        for i in 0..n as i64 {
            rising = &rising * &poly_ints(&[i, 1]);
        }
        let expanded = RationalPolynomial::new(
            (0..=n)
                .map(|k| {
                    let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                    Rational::from_integer(stirling_first_signed(n, k) * sign)
                })
                .collect(),
        );
        ensure_eq!(expanded, rising, "rising factorial n = {n}");
    }
    Ok(())
}

/// Divisor equation against TRR on a third marked point:
/// `I(a, i) = I(a-1, i-1) - I(a-1, i)`, with `I(0, 0) = 1`.
fn two_point_by_recursion(a: i64, i: i64) -> i64 {
    if a < 0 || i < 0 || i > a {
        return 0;
    }
    if a == 0 {
        return 1;
    }
    two_point_by_recursion(a - 1, i - 1) - two_point_by_recursion(a - 1, i)
}

fn line_descendants() -> Outcome {
    for s in 1..=5u32 {
        for a in 0..=2 * s {
            for i in 0..=a as i64 {
                let closed = lift(two_point_line(s, a, i))?;
                ensure_eq!(closed, int(two_point_by_recursion(a as i64, i)), "two-point s={s} a={a} i={i}");
                let sign = if (a as i64 - i) % 2 == 0 { 1 } else { -1 };
                ensure_eq!(closed, binomial(a as i64, i) * int(sign), "two-point sign s={s} a={a} i={i}");
            }
        }
        // string equation: drop the second point at i = s
        for a in 1..=2 * s {
            let one = lift(one_point_line(s, a - 1))?;
            ensure_eq!(one, lift(two_point_line(s, a, s as i64))?, "string equation s={s} a={a}");
            ensure_eq!(
                one,
                lift(one_point_descendant(DescendantQuery::new(s, 1, a as i64 - 1, 2 * s as i64 - a as i64)))?,
                "J-function line s={s} a={}",
                a - 1
            );
        }
    }
    ensure_eq!(lift(one_point_line(2, 2))?, int(-3), "s=2 a=2");
    ensure_eq!(lift(one_point_line(2, 3))?, int(6), "s=2 a=3");
    Ok(())
}

fn descendant_oracle() -> Outcome {
    let mut oracle = lift(Reconstructor::new(2))?;
    let mut compared = 0;
    for n in 1..=2u32 {
        let dim = DescendantQuery::new(2, n, 0, 0).moduli_dimension();
        for b in 0..=dim {
            let a = dim - b;
            let q = DescendantQuery::new(2, n, a, b);
            if !q.is_admissible() {
                continue;
            }
            let via_j = lift(one_point_descendant(q))?;
            let via_rec = oracle.one_point(n, a as u32, b as u32);
            ensure_eq!(via_j, via_rec, "s=2 n={n} a={a} b={b}");
            compared += 1;
        }
    }
    // b in 0..=2 for each n
    ensure_eq!(compared, 6, "admissible pairs compared");
    let q = DescendantQuery::new(1, 2, 2, 1);
    ensure_eq!(lift(one_point_descendant(q))?, ratio(1, 4), "J-function P^1 double cover");
    let mut p1 = lift(Reconstructor::new(1))?;
    ensure_eq!(p1.one_point(2, 2, 1), ratio(1, 4), "reconstruction P^1 double cover");
    Ok(())
}

fn max_contact_lines() -> Outcome {
    let engine = Engine::new();
    for s in [2u32, 3] {
        let si = s as i64;
        for d in 3..=8u32 {
            // (-1)^(s+1) sum_k S(2s-1,k) C(2s-k,s) d^k
            let mut closed = Rational::zero();
            for k in 1..=s as usize {
                let term = Rational::from_integer(stirling_first_signed(2 * s as usize - 1, k))
                    * binomial(2 * si - k as i64, si)
                    * at(d).pow(k as i32);
                closed += term;
            }
            if s % 2 == 0 {
                closed = -closed;
            }
            let via_engine = lift(engine.virtual_count(s, 1, d))?;
            ensure_eq!(via_engine, closed, "s={s} d={d} Stirling sum");
            ensure_eq!(lift(max_contact_lines_closed(s, &at(d)))?, closed, "library closed form s={s} d={d}");
            let expected = match s {
                2 => poly_ints(&[0, -6, 3]).eval(&at(d)),
                _ => poly_ints(&[0, 240, -200, 35]).eval(&at(d)),
            };
            ensure_eq!(via_engine, expected, "s={s} d={d} explicit polynomial");
        }
    }
    ensure_eq!(lift(engine.virtual_count(3, 1, 5))?, int(575), "s=3 d=5");
    Ok(())
}

fn hand_values() -> Outcome {
    let engine = Engine::new();
    for (n, d, want) in [(2, 3, ratio(135, 4)), (2, 4, int(102)), (3, 3, int(244)), (3, 4, ratio(2384, 3))] {
        ensure_eq!(lift(engine.virtual_count(2, n, d))?, want, "T_2,{n}({d})");
    }
    let direct = lift(engine.relative_invariant(InvariantKey::new(2, 4, 6, 2, 0, 0)))?;
    ensure_eq!(direct, int(102), "relative invariant (2,4,6,2,0,0)");
    Ok(())
}

fn interpolation() -> Outcome {
    let engine = Engine::new();
    let t22 = RationalPolynomial::new(vec![int(0), ratio(-63, 2), ratio(57, 4)]);
    let t23 = RationalPolynomial::new(vec![int(0), ratio(-812, 3), ratio(352, 3)]);
    ensure_eq!(lift(fit_and_verify(&engine, 2, 2, &[3, 4], &[5, 6]))?, t22, "T_2,2 fit");
    ensure_eq!(lift(fit_and_verify(&engine, 2, 3, &[3, 4], &[5, 6]))?, t23, "T_2,3 fit");
    for d in [5u32, 6] {
        ensure_eq!(lift(engine.virtual_count(2, 2, d))?, t22.eval(&at(d)), "T_2,2 direct at {d}");
        ensure_eq!(lift(engine.virtual_count(2, 3, d))?, t23.eval(&at(d)), "T_2,3 direct at {d}");
    }
    let samples: Vec<SamplePoint> = [5u32, 6, 7]
        .iter()
        .map(|&d| Ok(SamplePoint::new(d, lift(engine.virtual_count(3, 2, d))?)))
        .collect::<Result<_, String>>()?;
    let t32 = RationalPolynomial::new(vec![int(0), int(39852), int(-30294), ratio(20331, 4)]);
    ensure_eq!(lift(fit_t_polynomial(3, &samples))?, t32, "T_3,2 fit");
    Ok(())
}

fn b_d() -> Outcome {
    let cover = lift(multiple_cover_contribution(2, 3))?;
    ensure_eq!(cover, ratio(3, 4), "multiple cover k=2 w=3");
    for d in 3..=7u32 {
        let parts = lift(b_d_decomposition(d))?;
        ensure_eq!(parts.sigma_term, int(1), "sigma term d={d}");
        ensure_eq!(parts.cross_term, ratio(5, 4), "cross term d={d}");
        ensure_eq!(&parts.excess_coefficient * &parts.excess_term, ratio(3, 2), "excess d={d}");
        ensure_eq!(lift(b_d_via_restriction(d))?, ratio(3, 4), "b_d d={d}");
        ensure_eq!(lift(b_d_via_restriction(d))?, cover, "b_d vs cover d={d}");
    }
    Ok(())
}

fn sextactic() -> Outcome {
    let engine = Engine::new();
    for (d, want) in [(3u32, 27), (4, 84), (5, 165), (6, 270), (7, 399)] {
        let got = lift(sextactic_count(&engine, d))?;
        ensure_eq!(got, int(want), "n_{d}");
        ensure_eq!(got, int(3 * d as i64 * (4 * d as i64 - 9)), "3d(4d-9) at {d}");
    }
    Ok(())
}

fn cubic() -> Outcome {
    let engine = Engine::new();
    ensure_eq!(lift(cubic_count_conjectural(&engine, 3))?, int(234), "N_3");
    for d in 3..=6u32 {
        let di = d as i64;
        ensure_eq!(lift(cubic_count_conjectural(&engine, d))?, int(6 * di * (19 * di - 44)), "6d(19d-44) at {d}");
    }
    Ok(())
}

fn expected_dimension(s: u32, n: u32, m: u32) -> i64 {
    s as i64 + n as i64 * (s as i64 + 1) - 2 - m as i64
}

fn polynomiality(runner: &mut TestRunner) -> Outcome {
    let strategy = (1u32..=3, 1u32..=2, 1u32..=6).prop_flat_map(|(s, n, m)| (Just(s), Just(n), Just(m), 0..s));
    lift(runner.run(&strategy, |(s, n, m, k)| {
        let j = expected_dimension(s, n, m) - k as i64;
        if j < 0 {
            return Ok(());
        }
        let engine = Engine::new();
        let value = |d: u32| engine.relative_invariant(InvariantKey::new(s, d, m, n, k, j as u32)).unwrap();
        let points: Vec<(Rational, Rational)> = (1..=s + 1).map(|d| (at(d), value(d))).collect();
        let p = lagrange(&points).unwrap();
        prop_assert!(p.degree() <= s as i64, "degree {} > s", p.degree());
        prop_assert!(divisible_by_power_of_d(&p, k as usize + 1), "d^{} does not divide {}", k + 1, p);
        for d in s + 2..=s + 4 {
            prop_assert_eq!(p.eval(&at(d)), value(d));
        }
        Ok(())
    }))
}

fn vanishing(runner: &mut TestRunner) -> Outcome {
    let strategy = (1u32..=3, 1u32..=5, 0u32..=6, 1u32..=3, 0u32..=8, 0u32..=8);
    let engine = Engine::new();
    lift(runner.run(&strategy, |(s, d, m, n, k, j)| {
        let off_dimension = k as i64 + j as i64 != expected_dimension(s, n, m);
        let above = if m == 0 { k > s } else { k >= s };
        if off_dimension || above {
            let v = engine.relative_invariant(InvariantKey::new(s, d, m, n, k, j)).unwrap();
            prop_assert!(v.is_zero(), "({s},{d},{m},{n},{k},{j}) = {v}");
        }
        Ok(())
    }))
}

fn memo_determinism() -> Outcome {
    let keys: Vec<InvariantKey> = (3..=5u32)
        .flat_map(|d| (1..=3u32).map(move |n| (d, n)))
        .map(|(d, n)| InvariantKey::new(2, d, 3 * n, n, 0, 0))
        .collect();
    let forward = Engine::new();
    let backward = Engine::new();
    let a: Vec<Rational> = lift(keys.iter().map(|k| forward.relative_invariant(*k)).collect())?;
    let mut b: Vec<Rational> = lift(keys.iter().rev().map(|k| backward.relative_invariant(*k)).collect())?;
    b.reverse();
    ensure_eq!(format!("{a:?}"), format!("{b:?}"), "values by order");
    let shared = Engine::new();
    std::thread::scope(|scope| {
        for chunk in keys.chunks(3) {
            let shared = &shared;
            scope.spawn(move || chunk.iter().rev().for_each(|k| drop(shared.relative_invariant(*k))));
        }
    });
    let c: Vec<Rational> = lift(keys.iter().map(|k| shared.relative_invariant(*k)).collect())?;
    ensure_eq!(format!("{a:?}"), format!("{c:?}"), "values across threads");
    if forward.memo().entries() != backward.memo().entries() || forward.memo().entries() != shared.memo().entries() {
        return Err("memo tables differ by evaluation order".into());
    }
    Ok(())
}

fn round_trip(runner: &mut TestRunner) -> Outcome {
    let coefficient = (-500i64..500, 1i64..40).prop_map(|(a, b)| ratio(a, b));
    let strategy = (1u32..=4, proptest::collection::vec(coefficient, 4), 0u32..6);
    lift(runner.run(&strategy, |(s, raw, offset)| {
        let mut cs = vec![Rational::zero()];
        cs.extend(raw.into_iter().take(s as usize));
        let q = RationalPolynomial::new(cs);
        let start = (2 * s - 1) + offset;
        let samples: Vec<SamplePoint> = (start..start + s).map(|d| SamplePoint::new(d, q.eval(&at(d)))).collect();
        prop_assert_eq!(fit_t_polynomial(s, &samples).unwrap(), q);
        Ok(())
    }))
}

fn properties() -> Outcome {
    let config = Config { failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    polynomiality(&mut runner).map_err(|e| format!("polynomiality: {e}"))?;
    vanishing(&mut runner).map_err(|e| format!("vanishing: {e}"))?;
    memo_determinism().map_err(|e| format!("memo order: {e}"))?;
    round_trip(&mut runner).map_err(|e| format!("round trip: {e}"))?;
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("Stirling numbers and rising factorials", stirling),
        ("line descendants", line_descendants),
        ("J-function vs reconstruction oracle", descendant_oracle),
        ("maximal-contact lines", max_contact_lines),
        ("hand values T_2,2 and T_2,3", hand_values),
        ("interpolated polynomials", interpolation),
        ("double-cover contribution b_d", b_d),
        ("sextactic conics 3d(4d-9)", sextactic),
        ("conjectural cubics 6d(19d-44)", cubic),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  criterion {:>2}: {name} ({elapsed:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name} ({elapsed:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
