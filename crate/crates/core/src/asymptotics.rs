//! Normalized Frobenius traces of the nearby-cycles stalks, i.e. the
//! coefficients of the asymptotics of the basic function.
//!
//! The coefficient at a positive coweight `theta` is computed three ways:
//!
//! * [`trace_kostant_sum`]: `q^<rho,theta> * sum_K (1-q)^|R_K| q^-|K|` over
//!   Kostant partitions `K` of `theta`;
//! * [`trace_from_series`]: the coefficient of `e^theta` in the truncated
//!   expansion of `prod_beta (1 - e^beta) / (1 - q^-1 e^beta)`, converted to
//!   the characteristic-function basis via `e^theta = q^<rho,theta> 1_theta`;
//! * [`trace_grothendieck_oracle`]: the trace of the class
//!   `sum [2|K1| + |K2|](|K1|)` over splittings `theta1 + theta2 = theta`,
//!   `K1` a partition of `theta1` and `K2` a simple partition of `theta2`.
//!
//! All values omit the factor `q^{-dim(Bun_G)/2}`; see
//! [`NORMALIZATION_EXPONENT`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{Coweight, RootSystem, RootSystemSummary};
use crate::error::{Error, Result};
use crate::kostant::{enumerate_partitions, enumerate_simple_partitions};
use crate::qlaurent::{GrothendieckClass, LaurentPoly};

/// Exponent of the omitted normalization factor, in terms of the genus `g`
/// of the curve.
pub const NORMALIZATION_EXPONENT: &str = "-(g-1)*dim(G)/2";

/// A formal series over the positive coweights with Laurent-polynomial
/// coefficients, truncated above a height bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSeries {
    rank: usize,
    bound: u32,
    terms: BTreeMap<Coweight, LaurentPoly>,
}

impl MonoidSeries {
    /// The series `1 = e^0`.
    pub fn one(rank: usize, bound: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Coweight::zero(rank), LaurentPoly::one());
        MonoidSeries { rank, bound, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> &BTreeMap<Coweight, LaurentPoly> {
        &self.terms
    }

    /// Adds `coef * e^key`; keys above the bound are dropped.
    pub fn add_term(&mut self, key: Coweight, coef: LaurentPoly) {
        assert_eq!(key.rank(), self.rank, "series key rank mismatch");
        assert!(key.is_positive(), "series keys must be positive");
        if key.height() > self.bound as i64 || coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += &coef;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Coefficient of `e^theta`; zero when absent.
    pub fn coefficient(&self, theta: &Coweight) -> LaurentPoly {
        self.terms.get(theta).cloned().unwrap_or_default()
    }

    /// Truncated product. The result carries the smaller of the two bounds.
    pub fn mul(&self, other: &MonoidSeries) -> MonoidSeries {
        assert_eq!(self.rank, other.rank, "series rank mismatch");
        let bound = self.bound.min(other.bound);
        let mut out = MonoidSeries {
            rank: self.rank,
            bound,
            terms: BTreeMap::new(),
        };
        for (k1, c1) in &self.terms {
            let room = bound as i64 - k1.height();
            if room < 0 {
                continue;
            }
            for (k2, c2) in &other.terms {
                if k2.height() > room {
                    // terms are sorted by height
                    break;
                }
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    /// Drops every term above `bound`.
    pub fn truncate(&self, bound: u32) -> MonoidSeries {
        MonoidSeries {
            rank: self.rank,
            bound: bound.min(self.bound),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.height() <= bound as i64)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

/// `1 + sum_{i >= 1} q^-i (1-q) e^{i beta}`, the expansion of
/// `(1 - e^beta) / (1 - q^-1 e^beta)`, truncated at the bound.
pub fn geometric_factor(beta: &Coweight, bound: u32) -> MonoidSeries {
    let mut out = MonoidSeries::one(beta.rank(), bound);
    let step = beta.height();
    assert!(step > 0, "geometric factor needs a nonzero positive coroot");
    let terms = bound as i64 / step;
    let one_minus_q = LaurentPoly::one_minus_q();
    for i in 1..=terms {
        out.add_term(beta.scaled(i), one_minus_q.shift(-i));
    }
    out
}

/// The Gindikin-Karpelevich product over all positive coroots, truncated at
/// height `bound`.
pub fn gk_product_series(rs: &RootSystem, bound: u32) -> MonoidSeries {
    rs.positive_coroots()
        .iter()
        .fold(MonoidSeries::one(rs.rank(), bound), |acc, beta| {
            acc.mul(&geometric_factor(beta, bound))
        })
}

/// `q^<rho,theta>` times the `e^theta` coefficient of `series`.
pub fn trace_from_series(
    series: &MonoidSeries,
    rs: &RootSystem,
    theta: &Coweight,
) -> Result<LaurentPoly> {
    theta.check_positive(rs.rank())?;
    if series.rank != rs.rank() {
        return Err(Error::RankMismatch {
            coords: theta.coords().to_vec(),
            got: series.rank,
            expected: rs.rank(),
        });
    }
    if theta.height() > series.bound as i64 {
        return Err(Error::HeightExceeded {
            coords: theta.coords().to_vec(),
            height: theta.height(),
            bound: series.bound,
        });
    }
    Ok(series.coefficient(theta).shift(rs.pairing_with_rho(theta)))
}

/// `q^<rho,theta> * sum_{K in Kostant(theta)} (1-q)^|R_K| q^-|K|`.
pub fn trace_kostant_sum(rs: &RootSystem, theta: &Coweight) -> Result<LaurentPoly> {
    let partitions = enumerate_partitions(rs, theta)?;
    // group by (|R_K|, |K|) before expanding
    let mut grouped: BTreeMap<(usize, u64), u64> = BTreeMap::new();
    for k in &partitions {
        *grouped.entry((k.support_size(), k.size())).or_default() += 1;
    }
    let one_minus_q = LaurentPoly::one_minus_q();
    let mut powers: HashMap<usize, LaurentPoly> = HashMap::new();
    let mut total = LaurentPoly::zero();
    for ((support, size), count) in grouped {
        let power = powers
            .entry(support)
            .or_insert_with(|| one_minus_q.pow(support as u32));
        let term = &power.shift(-(size as i64)) * &LaurentPoly::monomial(count, 0);
        total += &term;
    }
    Ok(total.shift(rs.pairing_with_rho(theta)))
}

/// The class `sum [2|K1| + |K2|](|K1|)` over ordered splittings
/// `theta1 + theta2 = theta`, `K1` in `Kostant(theta1)`, `K2` simple in
/// `Kostant(theta2)`.
pub fn grothendieck_class(rs: &RootSystem, theta: &Coweight) -> Result<GrothendieckClass> {
    theta.check_positive(rs.rank())?;
    let mut class = GrothendieckClass::zero();
    for theta1 in theta.lower_box() {
        let theta2 = theta - &theta1;
        let simple = enumerate_simple_partitions(rs, &theta2)?;
        if simple.is_empty() {
            continue;
        }
        for k1 in enumerate_partitions(rs, &theta1)? {
            let n1 = k1.size() as i64;
            for k2 in &simple {
                let n2 = k2.size() as i64;
                class.add_token(2 * n1 + n2, n1, BigInt::one());
            }
        }
    }
    Ok(class)
}

/// The same class regrouped as `sum_K sum_{S subset R_K} [2|K| - |S|](|K| - |S|)`.
pub fn grothendieck_class_regrouped(
    rs: &RootSystem,
    theta: &Coweight,
) -> Result<GrothendieckClass> {
    let mut class = GrothendieckClass::zero();
    for k in enumerate_partitions(rs, theta)? {
        let size = k.size() as i64;
        let support = k.support_size();
        // subsets of R_K by cardinality: C(|R_K|, s) of each
        let mut binom = BigInt::one();
        for s in 0..=support {
            let s_i = s as i64;
            class.add_token(2 * size - s_i, size - s_i, binom.clone());
            binom = binom * BigInt::from(support - s) / BigInt::from(s + 1);
        }
    }
    Ok(class)
}

/// `q^<rho,theta>` times the trace of [`grothendieck_class`].
pub fn trace_grothendieck_oracle(rs: &RootSystem, theta: &Coweight) -> Result<LaurentPoly> {
    Ok(grothendieck_class(rs, theta)?
        .trace()
        .shift(rs.pairing_with_rho(theta)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceMethod {
    Kostant,
    Series,
    Oracle,
}

impl TraceMethod {
    pub const ALL: [TraceMethod; 3] = [TraceMethod::Kostant, TraceMethod::Series, TraceMethod::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            TraceMethod::Kostant => "kostant",
            TraceMethod::Series => "series",
            TraceMethod::Oracle => "oracle",
        }
    }

    pub fn trace(self, rs: &RootSystem, theta: &Coweight) -> Result<LaurentPoly> {
        match self {
            TraceMethod::Kostant => trace_kostant_sum(rs, theta),
            TraceMethod::Series => {
                theta.check_positive(rs.rank())?;
                let series = gk_product_series(rs, theta.height() as u32);
                trace_from_series(&series, rs, theta)
            }
            TraceMethod::Oracle => trace_grothendieck_oracle(rs, theta),
        }
    }
}

/// Computes the trace by all three routes and fails unless they agree.
pub fn trace_verified(rs: &RootSystem, theta: &Coweight) -> Result<LaurentPoly> {
    let kostant = TraceMethod::Kostant.trace(rs, theta)?;
    let series = TraceMethod::Series.trace(rs, theta)?;
    let oracle = TraceMethod::Oracle.trace(rs, theta)?;
    check_agreement(theta, kostant, series, oracle)
}

fn check_agreement(
    theta: &Coweight,
    kostant: LaurentPoly,
    series: LaurentPoly,
    oracle: LaurentPoly,
) -> Result<LaurentPoly> {
    if kostant == series && kostant == oracle {
        Ok(kostant)
    } else {
        Err(Error::VerificationMismatch {
            theta: theta.coords().to_vec(),
            kostant,
            series,
            oracle,
        })
    }
}

/// A formal sum `sum_k theta_k x_k` of positive coweights at distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDivisor {
    rank: usize,
    points: Vec<(String, Coweight)>,
}

impl ColoredDivisor {
    pub fn new(rank: usize, points: Vec<(String, Coweight)>) -> Result<Self> {
        let mut labels = BTreeSet::new();
        for (label, theta) in &points {
            if label.is_empty() {
                return Err(Error::InvalidDivisor("empty point label".into()));
            }
            if !labels.insert(label.as_str()) {
                return Err(Error::InvalidDivisor(format!("repeated label {label:?}")));
            }
            if theta.rank() != rank {
                return Err(Error::InvalidDivisor(format!(
                    "point {label:?} has {} coordinates, expected {rank}",
                    theta.rank()
                )));
            }
            if !theta.is_positive() {
                return Err(Error::InvalidDivisor(format!(
                    "point {label:?} carries non-positive coweight {theta}"
                )));
            }
            if theta.is_zero() {
                return Err(Error::InvalidDivisor(format!(
                    "point {label:?} carries the zero coweight"
                )));
            }
        }
        Ok(ColoredDivisor { rank, points })
    }

    pub fn empty(rank: usize) -> Self {
        ColoredDivisor {
            rank,
            points: Vec::new(),
        }
    }

    /// Parses `label:n1,n2,...;label:...`. Blank input is the empty divisor.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (label, coords) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidDivisor(format!("expected label:coords, got {part:?}")))?;
            let coords = coords
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidDivisor(format!("bad coordinates in {part:?}")))?;
            points.push((label.trim().to_string(), Coweight::new(coords)));
        }
        ColoredDivisor::new(rank, points)
    }

    pub fn points(&self) -> &[(String, Coweight)] {
        &self.points
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn total_weight(&self) -> Coweight {
        self.points
            .iter()
            .fold(Coweight::zero(self.rank), |acc, (_, t)| &acc + t)
    }

    /// Splits into the points whose labels satisfy `pred` and the rest.
    pub fn partition_by(&self, pred: impl Fn(&str) -> bool) -> (ColoredDivisor, ColoredDivisor) {
        let (a, b): (Vec<_>, Vec<_>) = self.points.iter().cloned().partition(|(l, _)| pred(l));
        (
            ColoredDivisor {
                rank: self.rank,
                points: a,
            },
            ColoredDivisor {
                rank: self.rank,
                points: b,
            },
        )
    }
}

impl fmt::Display for ColoredDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (label, theta)) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let coords: Vec<String> = theta.coords().iter().map(i64::to_string).collect();
            write!(f, "{label}:{}", coords.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for TraceMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kostant" => Ok(TraceMethod::Kostant),
            "series" => Ok(TraceMethod::Series),
            "oracle" => Ok(TraceMethod::Oracle),
            other => Err(Error::Parse(format!("unknown trace method {other:?}"))),
        }
    }
}

/// Product of the single-point traces.
pub fn divisor_trace(rs: &RootSystem, d: &ColoredDivisor) -> Result<LaurentPoly> {
    if d.rank != rs.rank() {
        return Err(Error::InvalidDivisor(format!(
            "divisor has rank {}, root system has rank {}",
            d.rank,
            rs.rank()
        )));
    }
    d.points
        .iter()
        .map(|(_, theta)| trace_kostant_sum(rs, theta))
        .product()
}

/// Normalized traces for every positive coweight up to a height bound
/// (Borel case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsympTable {
    pub root_system: RootSystemSummary,
    pub height: u32,
    pub verified: bool,
    pub genus: Option<u32>,
    pub entries: BTreeMap<Coweight, LaurentPoly>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    root_system: RootSystemSummary,
    height: u32,
    normalization_exponent: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalization_exponent_value: Option<String>,
    verified: bool,
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    theta: Coweight,
    trace: LaurentPoly,
}

impl AsympTable {
    pub fn entry(&self, theta: &Coweight) -> Option<&LaurentPoly> {
        self.entries.get(theta)
    }

    pub fn with_genus(mut self, genus: Option<u32>) -> Self {
        self.genus = genus;
        self
    }

    /// `-(g-1) dim(G) / 2` as a reduced fraction, when a genus is set.
    pub fn normalization_exponent_value(&self) -> Option<String> {
        let g = self.genus? as i64;
        let dim = self.root_system.rank as i64 + 2 * self.root_system.positive_coroots.len() as i64;
        let num = -(g - 1) * dim;
        Some(if num % 2 == 0 {
            (num / 2).to_string()
        } else {
            format!("{num}/2")
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.repr()).expect("table serializes")
    }

    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.repr()).expect("table serializes");
        text.push('\n');
        text
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let repr: TableRepr = serde_json::from_str(text)?;
        if repr.normalization_exponent != NORMALIZATION_EXPONENT {
            return Err(Error::Parse(format!(
                "unexpected normalization exponent {:?}",
                repr.normalization_exponent
            )));
        }
        let mut entries = BTreeMap::new();
        for e in repr.entries {
            if entries.insert(e.theta.clone(), e.trace).is_some() {
                return Err(Error::Parse(format!("duplicate entry for {}", e.theta)));
            }
        }
        Ok(AsympTable {
            root_system: repr.root_system,
            height: repr.height,
            verified: repr.verified,
            genus: repr.genus,
            entries,
        })
    }

    fn repr(&self) -> TableRepr {
        TableRepr {
            root_system: self.root_system.clone(),
            height: self.height,
            normalization_exponent: NORMALIZATION_EXPONENT.to_string(),
            genus: self.genus,
            normalization_exponent_value: self.normalization_exponent_value(),
            verified: self.verified,
            entries: self
                .entries
                .iter()
                .map(|(theta, trace)| EntryRepr {
                    theta: theta.clone(),
                    trace: trace.clone(),
                })
                .collect(),
        }
    }

    /// CSV with columns `theta,height,trace`; polynomials as text.
    pub fn to_csv_string(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["theta", "height", "trace"])
            .expect("in-memory write");
        for (theta, trace) in &self.entries {
            let coords: Vec<String> = theta.coords().iter().map(i64::to_string).collect();
            writer
                .write_record([
                    coords.join(" "),
                    theta.height().to_string(),
                    trace.to_string(),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8")
    }

    /// One line per entry: `(n1,...)  trace`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (theta, trace) in &self.entries {
            out.push_str(&format!("{theta}\t{trace}\n"));
        }
        out
    }
}

/// Builds the table of [`trace_kostant_sum`] over all positive coweights of
/// height at most `bound`. With `verify`, every entry is checked against the
/// series and Grothendieck routes; the first mismatch in canonical order is
/// returned as an error.
pub fn build_asymp_table(rs: &RootSystem, bound: u32, verify: bool) -> Result<AsympTable> {
    let thetas = Coweight::positive_up_to_height(rs.rank(), bound);
    let series = verify.then(|| gk_product_series(rs, bound));
    let values: Vec<Result<LaurentPoly>> = thetas
        .par_iter()
        .map(|theta| {
            let kostant = trace_kostant_sum(rs, theta)?;
            match &series {
                None => Ok(kostant),
                Some(series) => {
                    let from_series = trace_from_series(series, rs, theta)?;
                    let oracle = trace_grothendieck_oracle(rs, theta)?;
                    check_agreement(theta, kostant, from_series, oracle)
                }
            }
        })
        .collect();
    let mut entries = BTreeMap::new();
    for (theta, value) in thetas.into_iter().zip(values) {
        entries.insert(theta, value?);
    }
    Ok(AsympTable {
        root_system: rs.summary(),
        height: bound,
        verified: verify,
        genus: None,
        entries,
    })
}
