//! Cartan data, positive coroots and the coweight lattices built on them.
//!
//! Every coweight is written in the basis of simple coroots, so a positive
//! coweight is just a vector of nonnegative integers. Positive coroots are the
//! positive roots of the transposed Cartan matrix.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on generated roots; only reachable for a matrix that slipped
/// past the finite-type check.
const MAX_ROOTS: usize = 10_000;

/// An integer vector in simple-coroot coordinates.
///
/// Ordered by height first, then lexicographically, which is the canonical
/// enumeration order used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(Vec<i64>);

impl Coweight {
    pub fn new(coords: Vec<i64>) -> Self {
        Coweight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Coweight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Coweight(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&n| n >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    /// Coordinatewise `self <= other`.
    pub fn dominated_by(&self, other: &Coweight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, k: i64) -> Coweight {
        Coweight(self.0.iter().map(|n| n * k).collect())
    }

    /// Fails unless the vector has length `rank` and nonnegative entries.
    pub fn check_positive(&self, rank: usize) -> Result<()> {
        self.check_rank(rank)?;
        if !self.is_positive() {
            return Err(Error::NotPositive {
                coords: self.0.clone(),
            });
        }
        Ok(())
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.0.len() != rank {
            return Err(Error::RankMismatch {
                coords: self.0.clone(),
                got: self.0.len(),
                expected: rank,
            });
        }
        Ok(())
    }

    /// All positive coweights of the given rank with height at most `bound`,
    /// in canonical order.
    pub fn positive_up_to_height(rank: usize, bound: u32) -> Vec<Coweight> {
        let mut out = Vec::new();
        let mut current = vec![0i64; rank];
        fill_box(&mut current, 0, bound as i64, &mut out);
        out.sort();
        out
    }

    /// All positive coweights coordinatewise below `self` (inclusive), in
    /// canonical order.
    pub fn lower_box(&self) -> Vec<Coweight> {
        let mut out = vec![Vec::with_capacity(self.rank())];
        for &n in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..=n.max(0)).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k);
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<Coweight> = out.into_iter().map(Coweight).collect();
        out.sort();
        out
    }
}

fn fill_box(current: &mut Vec<i64>, pos: usize, budget: i64, out: &mut Vec<Coweight>) {
    if pos == current.len() {
        out.push(Coweight(current.clone()));
        return;
    }
    for k in 0..=budget {
        current[pos] = k;
        fill_box(current, pos + 1, budget - k, out);
    }
    current[pos] = 0;
}

impl Ord for Coweight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Coweight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        assert_eq!(self.rank(), rhs.rank(), "coweight rank mismatch");
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        assert_eq!(self.rank(), rhs.rank(), "coweight rank mismatch");
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// How a root system is specified: a finite-type series letter with a rank,
/// or an explicit Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootSystemKind {
    Series { series: char, rank: usize },
    Explicit(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemSpec {
    pub kind: RootSystemKind,
    pub label: Option<String>,
}

impl RootSystemSpec {
    pub fn series(series: char, rank: usize) -> Self {
        RootSystemSpec {
            kind: RootSystemKind::Series {
                series: series.to_ascii_uppercase(),
                rank,
            },
            label: None,
        }
    }

    pub fn explicit(matrix: Vec<Vec<i64>>) -> Self {
        RootSystemSpec {
            kind: RootSystemKind::Explicit(matrix),
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Parses a config file body.
    ///
    /// Two forms are accepted: a row-major JSON integer matrix such as
    /// `[[2,-1],[-1,2]]`, or whitespace-separated `key=value` tokens with keys
    /// `type`, `rank`, `label` and `cartan` (an inline JSON matrix). Lines
    /// starting with `#` are ignored.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let trimmed = body.trim();
        if trimmed.starts_with('[') {
            let matrix: Vec<Vec<i64>> = serde_json::from_str(trimmed)
                .map_err(|e| Error::Parse(format!("Cartan matrix JSON: {e}")))?;
            return Ok(RootSystemSpec::explicit(matrix));
        }

        let mut series = None;
        let mut rank = None;
        let mut label = None;
        let mut matrix = None;
        for token in trimmed.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
            match key {
                "type" | "series" => {
                    let mut chars = value.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => series = Some(c.to_ascii_uppercase()),
                        _ => return Err(Error::Parse(format!("bad series letter {value:?}"))),
                    }
                }
                "rank" => {
                    rank = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad rank {value:?}")))?,
                    )
                }
                "label" => label = Some(value.to_string()),
                "cartan" => {
                    matrix = Some(
                        serde_json::from_str::<Vec<Vec<i64>>>(value)
                            .map_err(|e| Error::Parse(format!("Cartan matrix JSON: {e}")))?,
                    )
                }
                other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
            }
        }

        let mut spec = match (series, rank, matrix) {
            (Some(s), Some(r), None) => RootSystemSpec::series(s, r),
            (None, None, Some(m)) => RootSystemSpec::explicit(m),
            _ => {
                return Err(Error::Parse(
                    "config needs either type=<letter> rank=<n> or cartan=<matrix>".into(),
                ))
            }
        };
        spec.label = label;
        Ok(spec)
    }
}

/// The Cartan matrix of a finite-type series in Bourbaki numbering, with
/// `a[i][j] = <alpha_i^vee, alpha_j>`.
pub fn series_cartan_matrix(series: char, rank: usize) -> Result<Vec<Vec<i64>>> {
    let unsupported = Err(Error::UnsupportedSeries { series, rank });
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // (i, j, a_ij) for entries other than -1 on an edge
    let mut heavy: Vec<(usize, usize, i64)> = Vec::new();
    match series {
        'A' if rank >= 1 => edges.extend((1..rank).map(|i| (i - 1, i))),
        'B' if rank >= 2 => {
            edges.extend((1..rank).map(|i| (i - 1, i)));
            heavy.push((rank - 1, rank - 2, -2));
        }
        'C' if rank >= 2 => {
            edges.extend((1..rank).map(|i| (i - 1, i)));
            heavy.push((rank - 2, rank - 1, -2));
        }
        'D' if rank >= 3 => {
            edges.extend((1..rank - 1).map(|i| (i - 1, i)));
            edges.push((rank - 3, rank - 1));
        }
        'E' if (6..=8).contains(&rank) => {
            edges.push((0, 2));
            edges.push((1, 3));
            edges.extend((2..rank - 1).map(|i| (i, i + 1)));
        }
        'F' if rank == 4 => {
            edges.extend([(0, 1), (1, 2), (2, 3)]);
            heavy.push((1, 2, -2));
        }
        'G' if rank == 2 => {
            edges.push((0, 1));
            heavy.push((1, 0, -3));
        }
        _ => return unsupported,
    }
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in edges {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    for (i, j, v) in heavy {
        a[i][j] = v;
    }
    Ok(a)
}

/// Closed-form number of positive roots for a recognized series.
pub fn expected_root_count(series: char, rank: usize) -> Option<usize> {
    let n = rank;
    match series {
        'A' => Some(n * (n + 1) / 2),
        'B' | 'C' => Some(n * n),
        'D' => Some(n * (n - 1)),
        'E' => match n {
            6 => Some(36),
            7 => Some(63),
            8 => Some(120),
            _ => None,
        },
        'F' if n == 4 => Some(24),
        'G' if n == 2 => Some(6),
        _ => None,
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks sign pattern, symmetrizability and positive definiteness.
#[allow(clippy::needless_range_loop)]
fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    let r = a.len();
    if r == 0 {
        return Err(Error::InvalidCartan("matrix is empty".into()));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != r {
            return Err(Error::InvalidCartan(format!(
                "row {} has length {}, expected {r}",
                i + 1,
                row.len()
            )));
        }
    }
    for i in 0..r {
        if a[i][i] != 2 {
            return Err(Error::InvalidCartan(format!(
                "diagonal entry ({0},{0}) is {1}, expected 2",
                i + 1,
                a[i][i]
            )));
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entry ({},{}) is positive",
                    i + 1,
                    j + 1
                )));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(Error::InvalidCartan(format!(
                    "entries ({0},{1}) and ({1},{0}) must vanish together",
                    i + 1,
                    j + 1
                )));
            }
        }
    }

    // Symmetrizer d with d_i a_ij = d_j a_ji, stored as reduced fractions.
    let mut d: Vec<Option<(i128, i128)>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (num, den) = d[i].expect("visited");
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let n = num * a[i][j] as i128;
                let m = den * a[j][i] as i128;
                let g = gcd(n, m);
                let (mut n, mut m) = (n / g, m / g);
                if m < 0 {
                    n = -n;
                    m = -m;
                }
                match d[j] {
                    None => {
                        d[j] = Some((n, m));
                        queue.push_back(j);
                    }
                    Some((pn, pm)) if pn * m != n * pm => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<(i128, i128)> = d.into_iter().map(|x| x.expect("all assigned")).collect();
    let lcm = d.iter().fold(1i128, |acc, &(_, den)| acc / gcd(acc, den) * den);
    let scale: Vec<i128> = d.iter().map(|&(num, den)| num * (lcm / den)).collect();

    // Symmetric matrix diag(scale) * A must be positive definite. Bareiss
    // elimination yields the leading principal minors as successive pivots.
    let mut m: Vec<Vec<i128>> = (0..r)
        .map(|i| (0..r).map(|j| scale[i] * a[i][j] as i128).collect())
        .collect();
    let mut prev = 1i128;
    for k in 0..r {
        if m[k][k] <= 0 {
            return Err(Error::InvalidCartan(
                "matrix is not of finite type (symmetrized form is not positive definite)".into(),
            ));
        }
        for i in k + 1..r {
            for j in k + 1..r {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(())
}

/// Positive roots of `a` by reflection closure from the simple roots,
/// where `a[i][j] = <alpha_i^vee, alpha_j>`.
fn reflection_closure(a: &[Vec<i64>]) -> Result<Vec<Coweight>> {
    let r = a.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..r {
        let e = Coweight::unit(r, i).into_coords();
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| a[i][j] * beta[j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&n| n >= 0) && seen.insert(image.clone()) {
                if seen.len() > MAX_ROOTS {
                    return Err(Error::InvalidCartan("root generation did not terminate".into()));
                }
                queue.push_back(image);
            }
        }
    }
    let mut roots: Vec<Coweight> = seen.into_iter().map(Coweight).collect();
    roots.sort();
    Ok(roots)
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    (0..r).map(|i| (0..r).map(|j| a[j][i]).collect()).collect()
}

/// Cartan datum together with its positive coroots in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    label: Option<String>,
    series: Option<(char, usize)>,
    cartan: Vec<Vec<i64>>,
    coroots: Vec<Coweight>,
    coroot_index: HashMap<Coweight, usize>,
}

impl RootSystem {
    /// The rank-zero system, with no coroots.
    pub fn empty() -> Self {
        RootSystem {
            label: Some("trivial".into()),
            series: None,
            cartan: Vec::new(),
            coroots: Vec::new(),
            coroot_index: HashMap::new(),
        }
    }

    fn from_matrix(
        cartan: Vec<Vec<i64>>,
        series: Option<(char, usize)>,
        label: Option<String>,
    ) -> Result<Self> {
        validate_cartan(&cartan)?;
        let coroots = reflection_closure(&transpose(&cartan))?;
        let coroot_index = coroots
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(RootSystem {
            label,
            series,
            cartan,
            coroots,
            coroot_index,
        })
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn series(&self) -> Option<(char, usize)> {
        self.series
    }

    /// Display name: the label if set, else the series name, else "custom".
    pub fn name(&self) -> String {
        match (&self.label, self.series) {
            (Some(l), _) => l.clone(),
            (None, Some((s, r))) => format!("{s}{r}"),
            (None, None) => "custom".into(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive coroots sorted by (height, lexicographic coordinates).
    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.coroots
    }

    pub fn coroot_index(&self, coroot: &Coweight) -> Option<usize> {
        self.coroot_index.get(coroot).copied()
    }

    pub fn heights(&self) -> Vec<i64> {
        self.coroots.iter().map(Coweight::height).collect()
    }

    /// Positive roots (as opposed to coroots) in simple-root coordinates.
    pub fn positive_roots(&self) -> Vec<Coweight> {
        reflection_closure(&self.cartan).expect("validated matrix")
    }

    /// `<rho, theta>`, i.e. the height of `theta`.
    pub fn pairing_with_rho(&self, theta: &Coweight) -> i64 {
        theta.height()
    }

    /// `<2 rho, alpha_i^vee>` for each simple coroot, with `2 rho` computed
    /// explicitly as the sum of the positive roots. Every entry should be 2.
    pub fn two_rho_pairings(&self) -> Vec<i64> {
        let r = self.rank();
        let mut two_rho = vec![0i64; r];
        for root in self.positive_roots() {
            for (acc, n) in two_rho.iter_mut().zip(root.coords()) {
                *acc += n;
            }
        }
        (0..r)
            .map(|i| (0..r).map(|j| self.cartan[i][j] * two_rho[j]).sum())
            .collect()
    }

    /// Dimension of the semisimple group with this Cartan datum.
    pub fn group_dimension(&self) -> usize {
        self.rank() + 2 * self.coroots.len()
    }

    pub fn summary(&self) -> RootSystemSummary {
        RootSystemSummary {
            name: self.name(),
            series: self.series.map(|(s, r)| format!("{s}{r}")),
            rank: self.rank(),
            index_set: (1..=self.rank()).collect(),
            cartan_matrix: self.cartan.clone(),
            positive_coroots: self
                .coroots
                .iter()
                .map(|c| c.coords().to_vec())
                .collect(),
            heights: self.heights(),
        }
    }
}

/// JSON shape of a root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemSummary {
    pub name: String,
    pub series: Option<String>,
    pub rank: usize,
    pub index_set: Vec<usize>,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
}

pub fn build_root_system(spec: &RootSystemSpec) -> Result<RootSystem> {
    match &spec.kind {
        RootSystemKind::Series { series, rank } => {
            let series = series.to_ascii_uppercase();
            let matrix = series_cartan_matrix(series, *rank)?;
            RootSystem::from_matrix(matrix, Some((series, *rank)), spec.label.clone())
        }
        RootSystemKind::Explicit(matrix) => {
            RootSystem::from_matrix(matrix.clone(), None, spec.label.clone())
        }
    }
}

/// `<rho, theta>`.
pub fn pairing_with_rho(rs: &RootSystem, theta: &Coweight) -> i64 {
    rs.pairing_with_rho(theta)
}

/// A standard parabolic, given by the Dynkin vertices of its Levi factor
/// (0-based). The empty set is the Borel, the full set is G itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicType {
    rank: usize,
    levi: BTreeSet<usize>,
}

impl ParabolicType {
    pub fn new(rank: usize, levi: impl IntoIterator<Item = usize>) -> Result<Self> {
        let levi: BTreeSet<usize> = levi.into_iter().collect();
        if let Some(&vertex) = levi.iter().find(|&&v| v >= rank) {
            return Err(Error::LeviOutOfRange { vertex, rank });
        }
        Ok(ParabolicType { rank, levi })
    }

    pub fn borel(rank: usize) -> Self {
        ParabolicType {
            rank,
            levi: BTreeSet::new(),
        }
    }

    pub fn whole(rank: usize) -> Self {
        ParabolicType {
            rank,
            levi: (0..rank).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn levi_vertices(&self) -> &BTreeSet<usize> {
        &self.levi
    }

    /// `r_M`.
    pub fn levi_rank(&self) -> usize {
        self.levi.len()
    }

    pub fn is_borel(&self) -> bool {
        self.levi.is_empty()
    }

    /// The vertices `I \ I_M` that index quotient coordinates.
    pub fn quotient_indices(&self) -> Vec<usize> {
        (0..self.rank).filter(|i| !self.levi.contains(i)).collect()
    }
}

/// Image of a coweight in the quotient lattice: the coordinates outside the
/// Levi vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientCoweight {
    indices: Vec<usize>,
    coords: Vec<i64>,
}

impl QuotientCoweight {
    pub fn new(p: &ParabolicType, coords: Vec<i64>) -> Result<Self> {
        let indices = p.quotient_indices();
        if indices.len() != coords.len() {
            return Err(Error::RankMismatch {
                got: coords.len(),
                coords,
                expected: indices.len(),
            });
        }
        Ok(QuotientCoweight { indices, coords })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&n| n >= 0)
    }

    fn same_index_set(&self, other: &Self) -> Result<()> {
        if self.indices != other.indices {
            return Err(Error::IndexMismatch {
                left: self.indices.clone(),
                right: other.indices.clone(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_index_set(other)?;
        Ok(QuotientCoweight {
            indices: self.indices.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_index_set(other)?;
        Ok(QuotientCoweight {
            indices: self.indices.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub(crate) fn with_coords(&self, coords: Vec<i64>) -> Self {
        debug_assert_eq!(coords.len(), self.indices.len());
        QuotientCoweight {
            indices: self.indices.clone(),
            coords,
        }
    }
}

impl fmt::Display for QuotientCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

/// The partial order on the quotient lattice: `a <= b` iff `b - a` is positive.
pub fn leq(
    _rs: &RootSystem,
    p: &ParabolicType,
    a: &QuotientCoweight,
    b: &QuotientCoweight,
) -> Result<bool> {
    a.same_index_set(b)?;
    let expected = p.quotient_indices();
    if a.indices != expected {
        return Err(Error::IndexMismatch {
            left: a.indices.clone(),
            right: expected,
        });
    }
    Ok(b.checked_sub(a)?.is_positive())
}

pub fn project_to_quotient(
    rs: &RootSystem,
    p: &ParabolicType,
    theta: &Coweight,
) -> Result<QuotientCoweight> {
    theta.check_rank(rs.rank())?;
    let indices = p.quotient_indices();
    let coords = indices.iter().map(|&i| theta.coords()[i]).collect();
    Ok(QuotientCoweight { indices, coords })
}

/// Root system of the Levi factor: the Cartan submatrix on `I_M`.
pub fn levi_subsystem(rs: &RootSystem, p: &ParabolicType) -> Result<RootSystem> {
    if p.levi.is_empty() {
        return Err(Error::EmptyLevi);
    }
    if p.rank != rs.rank() {
        return Err(Error::LeviOutOfRange {
            vertex: p.rank,
            rank: rs.rank(),
        });
    }
    let vertices: Vec<usize> = p.levi.iter().copied().collect();
    let sub: Vec<Vec<i64>> = vertices
        .iter()
        .map(|&i| vertices.iter().map(|&j| rs.cartan[i][j]).collect())
        .collect();
    let label = format!(
        "Levi{{{}}} of {}",
        vertices
            .iter()
            .map(|v| (v + 1).to_string())
            .collect::<Vec<_>>()
            .join(","),
        rs.name()
    );
    RootSystem::from_matrix(sub, None, Some(label))
}
