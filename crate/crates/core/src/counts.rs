//! Enumerative counts obtained from virtual counts by subtracting
//! multiple-cover contributions: flex lines, sextactic conics, and the
//! conjectural count of maximal-contact rational cubics.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::descendants::ClassPolynomial;
use crate::error::{Error, Result};
use crate::gathmann::{max_contact_lines_closed, Engine};
use crate::qrationals::{binomial, format_rational, rational_string, Rational};

/// Multiplicity with which the section raising contact order 5 to 6
/// vanishes where the smooth-conic component meets a double-line component.
pub const SIGMA_MULTIPLICITY: i64 = 1;

/// The comb locus of `D_(5)` for plane conics is three times the locus of
/// two flex-line teeth with contact orders 2 and 3.
pub const EXCESS_COEFFICIENT: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correction {
    pub label: String,
    /// How many such loci there are (e.g. the number of flex lines).
    #[serde(with = "rational_string")]
    pub count: Rational,
    /// Contribution of each locus to the virtual count.
    #[serde(with = "rational_string")]
    pub contribution: Rational,
}

impl Correction {
    pub fn total(&self) -> Rational {
        &self.count * &self.contribution
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub name: String,
    pub d: u32,
    #[serde(with = "rational_string")]
    pub total_virtual: Rational,
    pub corrections: Vec<Correction>,
    #[serde(with = "rational_string")]
    pub enumerative_count: Rational,
}

impl CountReport {
    pub fn new(name: impl Into<String>, d: u32, total_virtual: Rational, corrections: Vec<Correction>) -> Self {
        let subtracted: Rational = corrections.iter().map(Correction::total).sum();
        let enumerative_count = &total_virtual - subtracted;
        Self { name: name.into(), d, total_virtual, corrections, enumerative_count }
    }

    pub fn correction_total(&self) -> Rational {
        self.corrections.iter().map(Correction::total).sum()
    }

    /// `enumerative_count == total_virtual - sum(count * contribution)`.
    pub fn is_consistent(&self) -> bool {
        self.enumerative_count == &self.total_virtual - self.correction_total()
    }

    pub fn is_nonnegative_integer(&self) -> bool {
        self.enumerative_count.is_integer() && !self.enumerative_count.is_negative()
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    d: u32,
    total_virtual: String,
    correction_total: String,
    enumerative_count: String,
}

/// CSV with columns `name,d,total_virtual,correction_total,enumerative_count`.
pub fn reports_to_csv(reports: &[CountReport]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in reports {
        writer
            .serialize(CsvRow {
                name: &r.name,
                d: r.d,
                total_virtual: format_rational(&r.total_virtual),
                correction_total: format_rational(&r.correction_total()),
                enumerative_count: format_rational(&r.enumerative_count),
            })
            .map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn reports_to_json(reports: &[CountReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports always serialize")
}

fn require_plane_curve_degree(d: u32) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("enumerative counts need d >= 3, got {d}")));
    }
    Ok(())
}

fn integer(d: u32) -> Rational {
    Rational::from_integer(BigInt::from(d))
}

/// Flex lines of a general plane curve of degree `d`: `3d(d-2)`.
pub fn inflectional_lines(d: u32) -> Result<Rational> {
    require_plane_curve_degree(d)?;
    let d = integer(d);
    Ok(Rational::from_integer(BigInt::from(3)) * &d * (&d - Rational::from_integer(BigInt::from(2))))
}

/// Contribution of a `k`-fold cover of a curve with contact order `w`:
/// `C(k(w-1)-1, k-1) / k^2`.
pub fn multiple_cover_contribution(k: u32, w: u32) -> Result<Rational> {
    if k < 1 {
        return Err(Error::InvalidArgument(format!("cover degree k must be >= 1, got {k}")));
    }
    if w < 2 {
        return Err(Error::InvalidArgument(format!("contact order w must be >= 2, got {w}")));
    }
    let (k, w) = (k as i64, w as i64);
    Ok(binomial(k * (w - 1) - 1, k - 1) / Rational::from_integer(BigInt::from(k * k)))
}

/// Pieces of the double-cover contribution `b_d` of one flex line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdDecomposition {
    /// Vanishing order of the contact-raising section on the conic component.
    pub sigma_term: Rational,
    /// `(d ev*H + 5ψ) ev*H (ev*H + ψ)` on the double covers of the line.
    pub cross_term: Rational,
    pub excess_coefficient: Rational,
    /// `ev*H (ev*H + ψ)(ev*H + 2ψ)` on the double covers of the line.
    pub excess_term: Rational,
}

impl BdDecomposition {
    pub fn total(&self) -> Rational {
        &self.sigma_term + &self.cross_term - &self.excess_coefficient * &self.excess_term
    }
}

/// `b_d`, computed on `M_{0,1}(P^1, 2)`: the double covers of a fixed flex
/// line are the degree-2 maps to that line with contact order 2 to the
/// flex point, so every class becomes a polynomial in `ev*H` (a point
/// class on `P^1`) and `ψ`.
pub fn b_d_decomposition(d: u32) -> Result<BdDecomposition> {
    require_plane_curve_degree(d)?;
    let zero = Rational::zero;
    let one = || Rational::from_integer(BigInt::from(1));
    let c = |v: i64| Rational::from_integer(BigInt::from(v));
    let contact_two = &ClassPolynomial::linear(one(), zero()) * &ClassPolynomial::linear(one(), one());
    let raise_from_five = ClassPolynomial::linear(integer(d), c(5));
    let raise_from_two = ClassPolynomial::linear(one(), c(2));
    Ok(BdDecomposition {
        sigma_term: c(SIGMA_MULTIPLICITY),
        cross_term: (&raise_from_five * &contact_two).integrate(1, 2)?,
        excess_coefficient: c(EXCESS_COEFFICIENT),
        excess_term: (&raise_from_two * &contact_two).integrate(1, 2)?,
    })
}

pub fn b_d_via_restriction(d: u32) -> Result<Rational> {
    Ok(b_d_decomposition(d)?.total())
}

/// Virtual count `T_{s,n}(d)` with nothing subtracted.
pub fn tsn_report(engine: &Engine, s: u32, n: u32, d: u32) -> Result<CountReport> {
    Ok(CountReport::new(format!("T_{s}_{n}"), d, engine.virtual_count(s, n, d)?, Vec::new()))
}

/// Lines with maximal contact `2s - 1` to a degree-`d` hypersurface of `P^s`.
/// The engine value is cross-checked against the Stirling closed form.
pub fn lines_report(engine: &Engine, s: u32, d: u32) -> Result<CountReport> {
    require_plane_curve_degree(d)?;
    let total = engine.virtual_count(s, 1, d)?;
    let closed = max_contact_lines_closed(s, &integer(d))?;
    if total != closed {
        return Err(Error::Internal(format!(
            "engine gives {total} lines but the closed form gives {closed} (s={s}, d={d})"
        )));
    }
    Ok(CountReport::new(format!("lines_{s}"), d, total, Vec::new()))
}

pub fn sextactic_report(engine: &Engine, d: u32) -> Result<CountReport> {
    require_plane_curve_degree(d)?;
    let correction = Correction {
        label: "double covers of flex lines".into(),
        count: inflectional_lines(d)?,
        contribution: b_d_via_restriction(d)?,
    };
    Ok(CountReport::new("sextactic", d, engine.virtual_count(2, 2, d)?, vec![correction]))
}

/// Conics with contact order 6 to a general plane curve of degree `d`.
pub fn sextactic_count(engine: &Engine, d: u32) -> Result<Rational> {
    Ok(sextactic_report(engine, d)?.enumerative_count)
}

/// Subtracts triple covers of flex lines from `T_{2,3}` assuming the
/// multiple-cover formula holds for every `d`, which is conjectural.
pub fn cubic_report(engine: &Engine, d: u32) -> Result<CountReport> {
    require_plane_curve_degree(d)?;
    let correction = Correction {
        label: "triple covers of flex lines".into(),
        count: inflectional_lines(d)?,
        contribution: multiple_cover_contribution(3, 3)?,
    };
    Ok(CountReport::new("cubic-conjectural", d, engine.virtual_count(2, 3, d)?, vec![correction]))
}

pub fn cubic_count_conjectural(engine: &Engine, d: u32) -> Result<Rational> {
    Ok(cubic_report(engine, d)?.enumerative_count)
}

/// Maximal-contact rational curves of degree `n` in `P^s`, where the
/// needed corrections are known: lines for any `s`, and plane conics and
/// cubics. Covers of irreducible curves and reducible configurations
/// enter from `n = 4` on and are not modelled.
pub fn enumerative_report(engine: &Engine, s: u32, n: u32, d: u32) -> Result<CountReport> {
    match (s, n) {
        (_, 1) => lines_report(engine, s, d),
        (2, 2) => sextactic_report(engine, d),
        (2, 3) => cubic_report(engine, d),
        (_, n) if n >= 4 => Err(Error::Unsupported(format!(
            "degree {n} needs corrections from covers of irreducible and reducible curves"
        ))),
        _ => Err(Error::Unsupported(format!(
            "multiple-cover corrections for degree {n} curves in P^{s} are unknown; use the virtual count"
        ))),
    }
}
