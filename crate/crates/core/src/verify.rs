//! Regression suite behind `relgw verify`. Every check builds its own
//! cold engine, so results never depend on a cache.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counts::{
    b_d_decomposition, cubic_count_conjectural, multiple_cover_contribution, sextactic_count, sextactic_report,
};
use crate::descendants::reconstruction::Reconstructor;
use crate::descendants::{one_point_descendant, one_point_line, two_point_line, DescendantQuery};
use crate::gathmann::{max_contact_lines_closed, Engine, InvariantKey};
use crate::interp::{divisible_by_power_of_d, fit_and_verify, lagrange};
use crate::qrationals::{stirling_first_table, Rational, RationalPolynomial};

type Outcome = std::result::Result<(), String>;

pub struct Check {
    pub group: &'static str,
    pub name: &'static str,
    run: fn() -> Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub group: &'static str,
    pub name: &'static str,
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub const GROUPS: &[&str] = &[
    "stirling",
    "lines-descendants",
    "oracle",
    "max-lines",
    "hand-values",
    "interpolation",
    "bd",
    "sextactic",
    "cubic",
    "properties",
];

pub fn checks() -> Vec<Check> {
    vec![
        Check { group: "stirling", name: "tabulated Stirling values", run: stirling_values },
        Check { group: "stirling", name: "rising factorial identity n <= 12", run: rising_factorial },
        Check { group: "lines-descendants", name: "two-point and one-point line formulas", run: line_formulas },
        Check { group: "oracle", name: "J-function vs reconstruction, P^2 degree <= 2", run: oracle_agreement },
        Check { group: "oracle", name: "double cover of P^1 gives 1/4", run: oracle_quarter },
        Check { group: "max-lines", name: "engine lines equal the Stirling closed form", run: max_lines },
        Check { group: "hand-values", name: "T_2,2 and T_2,3 at d = 3, 4", run: hand_values },
        Check { group: "interpolation", name: "T_2,2 and T_2,3 polynomials", run: plane_polynomials },
        Check { group: "interpolation", name: "T_3,2 cubic", run: space_polynomial },
        Check { group: "bd", name: "b_d = 1 + 5/4 - 3/2 = 3/4", run: b_d },
        Check { group: "sextactic", name: "n_d = 3d(4d-9), d = 3..7", run: sextactic },
        Check { group: "cubic", name: "N_d = 6d(19d-44), d = 3..6", run: cubic },
        Check { group: "properties", name: "polynomiality and divisibility in d", run: polynomiality },
        Check { group: "properties", name: "vanishing gates", run: vanishing_gates },
        Check { group: "properties", name: "memo order determinism", run: memo_determinism },
    ]
}

/// Runs every check, or only those whose group is `only`.
pub fn run(only: Option<&str>) -> Vec<CheckResult> {
    checks()
        .into_iter()
        .filter(|c| only.is_none_or(|g| g == c.group))
        .map(|c| CheckResult { group: c.group, name: c.name, failure: (c.run)().err() })
        .collect()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn expect(label: impl std::fmt::Display, actual: Rational, expected: Rational) -> Outcome {
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{label}: expected {expected}, got {actual}"))
    }
}

fn lift<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn stirling_values() -> Outcome {
    let table = stirling_first_table(5);
    for (n, k, v) in [(3, 1, 2), (3, 2, -3), (5, 1, 24), (5, 2, -50), (5, 3, 35)] {
        if table[n][k] != BigInt::from(v) {
            return Err(format!("S({n},{k}) = {}, expected {v}", table[n][k]));
        }
    }
    Ok(())
}

fn rising_factorial() -> Outcome {
    let table = stirling_first_table(12);
    let mut expansion = vec![BigInt::one()];
    for (n, row) in table.iter().enumerate() {
        for (k, c) in expansion.iter().enumerate() {
            let signed = if (n - k) % 2 == 0 { row[k].clone() } else { -row[k].clone() };
            if *c != signed {
                return Err(format!("coefficient of x^{k} in the rising factorial of length {n}"));
            }
        }
        let mut next = vec![BigInt::zero(); expansion.len() + 1];
        for (i, c) in expansion.iter().enumerate() {
            next[i + 1] += c;
            next[i] += c * BigInt::from(n);
        }
        expansion = next;
    }
    Ok(())
}

fn line_formulas() -> Outcome {
    expect("two_point_line(2,0,0)", lift(two_point_line(2, 0, 0))?, int(1))?;
    expect("two_point_line(3,2,1)", lift(two_point_line(3, 2, 1))?, int(-2))?;
    expect("one_point_line(2,2)", lift(one_point_line(2, 2))?, int(-3))?;
    expect("one_point_line(2,3)", lift(one_point_line(2, 3))?, int(6))?;
    for s in 1..=5u32 {
        for a in 1..=2 * s {
            expect(
                format!("string equation s={s} a={a}"),
                lift(two_point_line(s, a, s as i64))?,
                lift(one_point_line(s, a - 1))?,
            )?;
        }
    }
    Ok(())
}

fn oracle_agreement() -> Outcome {
    let mut oracle = lift(Reconstructor::new(2))?;
    for n in 1..=2u32 {
        let q0 = DescendantQuery::new(2, n, 0, 0);
        let dim = q0.moduli_dimension();
        for b in 0..=2i64 {
            let a = dim - b;
            let closed = lift(one_point_descendant(DescendantQuery::new(2, n, a, b)))?;
            expect(format!("<tau_{a}(H^{b})>_{n}"), closed, oracle.one_point(n, a as u32, b as u32))?;
        }
    }
    Ok(())
}

fn oracle_quarter() -> Outcome {
    let closed = lift(one_point_descendant(DescendantQuery::new(1, 2, 2, 1)))?;
    expect("J-function", closed, ratio(1, 4))?;
    let mut oracle = lift(Reconstructor::new(1))?;
    expect("reconstruction", oracle.one_point(2, 2, 1), ratio(1, 4))
}

fn max_lines() -> Outcome {
    let engine = Engine::new();
    for s in [2u32, 3] {
        for d in 3..=8u32 {
            let closed = lift(max_contact_lines_closed(s, &int(d as i64)))?;
            expect(format!("T_{s},1({d})"), lift(engine.virtual_count(s, 1, d))?, closed.clone())?;
            let d = d as i64;
            let classical = if s == 2 { int(3 * d * (d - 2)) } else { int(35 * d * d * d - 200 * d * d + 240 * d) };
            expect(format!("classical count s={s} d={d}"), closed, classical)?;
        }
    }
    expect("T_3,1(5)", lift(engine.virtual_count(3, 1, 5))?, int(575))
}

fn hand_values() -> Outcome {
    let engine = Engine::new();
    expect("T_2,2(3)", lift(engine.virtual_count(2, 2, 3))?, ratio(135, 4))?;
    expect("T_2,2(4)", lift(engine.virtual_count(2, 2, 4))?, int(102))?;
    expect("T_2,3(3)", lift(engine.virtual_count(2, 3, 3))?, int(244))?;
    expect("T_2,3(4)", lift(engine.virtual_count(2, 3, 4))?, ratio(2384, 3))
}

fn expect_poly(label: &str, actual: RationalPolynomial, expected: Vec<Rational>) -> Outcome {
    let expected = RationalPolynomial::new(expected);
    if actual == expected {
        Ok(())
    } else {
        Err(format!("{label}: expected {expected}, got {actual}"))
    }
}

fn plane_polynomials() -> Outcome {
    let engine = Engine::new();
    let t22 = lift(fit_and_verify(&engine, 2, 2, &[3, 4], &[5, 6]))?;
    expect_poly("T_2,2", t22, vec![int(0), ratio(-63, 2), ratio(57, 4)])?;
    let t23 = lift(fit_and_verify(&engine, 2, 3, &[3, 4], &[5, 6]))?;
    expect_poly("T_2,3", t23, vec![int(0), ratio(-812, 3), ratio(352, 3)])
}

fn space_polynomial() -> Outcome {
    let engine = Engine::new();
    let t32 = lift(fit_and_verify(&engine, 3, 2, &[5, 6, 7], &[8]))?;
    expect_poly("T_3,2", t32, vec![int(0), int(39852), int(-30294), ratio(20331, 4)])
}

fn b_d() -> Outcome {
    for d in 3..=7u32 {
        let parts = lift(b_d_decomposition(d))?;
        expect(format!("sigma term d={d}"), parts.sigma_term.clone(), int(1))?;
        expect(format!("cross term d={d}"), parts.cross_term.clone(), ratio(5, 4))?;
        expect(format!("excess d={d}"), &parts.excess_coefficient * &parts.excess_term, ratio(3, 2))?;
        expect(format!("b_{d}"), parts.total(), lift(multiple_cover_contribution(2, 3))?)?;
        expect(format!("b_{d}"), parts.total(), ratio(3, 4))?;
    }
    Ok(())
}

fn sextactic() -> Outcome {
    let engine = Engine::new();
    for (d, expected) in [(3u32, 27i64), (4, 84), (5, 165), (6, 270), (7, 399)] {
        let di = d as i64;
        if expected != 3 * di * (4 * di - 9) {
            return Err(format!("table value for d={d} disagrees with 3d(4d-9)"));
        }
        expect(format!("n_{d}"), lift(sextactic_count(&engine, d))?, int(expected))?;
        let report = lift(sextactic_report(&engine, d))?;
        if !report.is_consistent() || !report.is_nonnegative_integer() {
            return Err(format!("report integrity for d={d}"));
        }
    }
    Ok(())
}

fn cubic() -> Outcome {
    let engine = Engine::new();
    expect("N_3", lift(cubic_count_conjectural(&engine, 3))?, int(234))?;
    for d in 3..=6u32 {
        let di = d as i64;
        expect(format!("N_{d}"), lift(cubic_count_conjectural(&engine, d))?, int(6 * di * (19 * di - 44)))?;
    }
    Ok(())
}

fn polynomiality() -> Outcome {
    let engine = Engine::new();
    for s in 1..=2u32 {
        for n in 1..=3u32 {
            let top = s + n * (s + 1) - 2;
            for m in 1..=top {
                for k in 0..s {
                    let Some(j) = (top - m).checked_sub(k) else { continue };
                    // s + 1 samples fix the fit, two more test it
                    let ds: Vec<u32> = (3..3 + s + 3).collect();
                    let mut points = Vec::new();
                    for &d in &ds {
                        let v = lift(engine.relative_invariant(InvariantKey::new(s, d, m, n, k, j)))?;
                        points.push((int(d as i64), v));
                    }
                    let fitted = lift(lagrange(&points[..=s as usize]))?;
                    let label = format!("s={s} n={n} m={m} k={k} j={j}");
                    if fitted.degree() > s as i64 {
                        return Err(format!("{label}: degree {} > {s}", fitted.degree()));
                    }
                    for (x, y) in &points[s as usize + 1..] {
                        expect(format!("{label} at d={x}"), fitted.eval(x), y.clone())?;
                    }
                    if !divisible_by_power_of_d(&fitted, (k + 1) as usize) {
                        return Err(format!("{label}: {fitted} not divisible by d^{}", k + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

fn vanishing_gates() -> Outcome {
    let engine = Engine::new();
    for s in 1..=3u32 {
        for n in 1..=2u32 {
            for m in 0..=8u32 {
                for k in 0..=10u32 {
                    for j in 0..=10u32 {
                        let key = InvariantKey::new(s, 5, m, n, k, j);
                        let off = (k + j) as i64 != key.expected_dimension();
                        let high = if m == 0 { k > s } else { k >= s };
                        if (off || high) && !lift(engine.relative_invariant(key))?.is_zero() {
                            return Err(format!("{key} should vanish"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn memo_determinism() -> Outcome {
    let forward = Engine::new();
    let backward = Engine::new();
    let ds: Vec<u32> = (3..=7).collect();
    let a: Vec<Rational> = lift(ds.iter().map(|&d| forward.virtual_count(2, 3, d)).collect())?;
    let mut b: Vec<Rational> = lift(ds.iter().rev().map(|&d| backward.virtual_count(2, 3, d)).collect())?;
    b.reverse();
    if a != b || forward.memo().entries() != backward.memo().entries() {
        return Err("evaluation order changed memo contents".into());
    }
    Ok(())
}
