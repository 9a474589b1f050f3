//! Index combinatorics of the stratifications: coordinate strata of the
//! adjoint torus closure, defect strata and their local-model triples, and the
//! codimension of a defect stratum.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cartan::{Coweight, ParabolicType, QuotientCoweight, RootSystem};
use crate::error::{Error, Result};

/// Stratum of `T_adj^+` attached to a standard parabolic, with its canonical
/// point `c_P` (1 on the Levi vertices, 0 elsewhere).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicStratum {
    pub parabolic: ParabolicType,
    pub point: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicStratumRepr {
    /// Levi vertices, 1-based.
    pub levi: Vec<usize>,
    pub point: Vec<u8>,
}

impl ParabolicStratum {
    pub fn new(parabolic: ParabolicType) -> Self {
        let point = (0..parabolic.rank())
            .map(|i| u8::from(parabolic.levi_vertices().contains(&i)))
            .collect();
        ParabolicStratum { parabolic, point }
    }

    pub fn repr(&self) -> ParabolicStratumRepr {
        ParabolicStratumRepr {
            levi: self.parabolic.levi_vertices().iter().map(|v| v + 1).collect(),
            point: self.point.clone(),
        }
    }
}

/// All `2^r` strata, sorted by Levi size then lexicographically.
pub fn enumerate_parabolic_strata(rs: &RootSystem) -> Vec<ParabolicStratum> {
    let r = rs.rank();
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << r)
        .map(|mask| (0..r).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets
        .into_iter()
        .map(|s| ParabolicStratum::new(ParabolicType::new(r, s).expect("vertices in range")))
        .collect()
}

/// A local-model stratum `(theta1, mu, theta2)` with `theta1 + mu + theta2 = theta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalStratum {
    pub theta1: QuotientCoweight,
    pub mu: QuotientCoweight,
    pub theta2: QuotientCoweight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalStratumRepr {
    pub theta1: Vec<i64>,
    pub mu: Vec<i64>,
    pub theta2: Vec<i64>,
}

impl LocalStratum {
    pub fn defect(&self) -> QuotientCoweight {
        self.theta1
            .checked_add(&self.mu)
            .and_then(|s| s.checked_add(&self.theta2))
            .expect("components share an index set")
    }

    pub fn repr(&self) -> LocalStratumRepr {
        LocalStratumRepr {
            theta1: self.theta1.coords().to_vec(),
            mu: self.mu.coords().to_vec(),
            theta2: self.theta2.coords().to_vec(),
        }
    }
}

fn quotient_box(theta: &QuotientCoweight) -> Vec<QuotientCoweight> {
    Coweight::new(theta.coords().to_vec())
        .lower_box()
        .into_iter()
        .map(|c| theta.with_coords(c.into_coords()))
        .collect()
}

/// All ordered triples of positive quotient coweights summing to `theta`.
pub fn enumerate_local_strata(
    _rs: &RootSystem,
    p: &ParabolicType,
    theta: &QuotientCoweight,
) -> Result<Vec<LocalStratum>> {
    if theta.indices() != p.quotient_indices().as_slice() {
        return Err(Error::IndexMismatch {
            left: theta.indices().to_vec(),
            right: p.quotient_indices(),
        });
    }
    if !theta.is_positive() {
        return Err(Error::NotPositive {
            coords: theta.coords().to_vec(),
        });
    }
    let mut out = Vec::new();
    for theta1 in quotient_box(theta) {
        let rest = theta.checked_sub(&theta1)?;
        for mu in quotient_box(&rest) {
            let theta2 = rest.checked_sub(&mu)?;
            out.push(LocalStratum {
                theta1: theta1.clone(),
                mu,
                theta2,
            });
        }
    }
    Ok(out)
}

/// `prod_i C(n_i + 2, 2)`: the number of local strata over `theta`.
pub fn local_strata_count(theta: &QuotientCoweight) -> u128 {
    theta
        .coords()
        .iter()
        .map(|&n| {
            let n = n as u128;
            (n + 2) * (n + 1) / 2
        })
        .product()
}

/// Global strata of a fixed defect, `(lambda2 - theta, lambda2)` with
/// `lambda2` free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectPair {
    pub defect: QuotientCoweight,
}

impl DefectPair {
    pub fn new(defect: QuotientCoweight) -> Result<Self> {
        if !defect.is_positive() {
            return Err(Error::NotPositive {
                coords: defect.coords().to_vec(),
            });
        }
        Ok(DefectPair { defect })
    }

    /// The pair `(lambda1, lambda2)` for a chosen `lambda2`.
    pub fn at(&self, lambda2: &QuotientCoweight) -> Result<(QuotientCoweight, QuotientCoweight)> {
        Ok((lambda2.checked_sub(&self.defect)?, lambda2.clone()))
    }
}

/// Codimension `<2 rho, theta>` of the defect stratum.
pub fn codim_defect(rs: &RootSystem, theta: &Coweight) -> Result<u64> {
    theta.check_positive(rs.rank())?;
    Ok(2 * rs.pairing_with_rho(theta) as u64)
}

/// The coordinatewise order on positive quotient coweights up to a height
/// bound, with its covering relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectPoset {
    pub parabolic: ParabolicType,
    pub bound: u32,
    /// Canonical order; index 0 is the zero element.
    pub elements: Vec<QuotientCoweight>,
    /// `(lower, upper)` index pairs, sorted.
    pub covers: Vec<(usize, usize)>,
}

impl DefectPoset {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a]
            .coords()
            .iter()
            .zip(self.elements[b].coords())
            .all(|(x, y)| x <= y)
    }

    /// Codimension label, available in the Borel case where the quotient is
    /// the full coroot lattice.
    pub fn codim(&self, i: usize) -> Option<u64> {
        self.parabolic
            .is_borel()
            .then(|| 2 * self.elements[i].height() as u64)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph defect_poset {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let label = match self.codim(i) {
                Some(c) => format!("{e}\\ncodim {c}"),
                None => e.to_string(),
            };
            writeln!(out, "  n{i} [label=\"{label}\"];").expect("string write");
        }
        for (a, b) in &self.covers {
            writeln!(out, "  n{a} -> n{b};").expect("string write");
        }
        out.push_str("}\n");
        out
    }
}

/// Covers in the coordinatewise order are exactly the unit-vector steps.
pub fn defect_poset(_rs: &RootSystem, p: &ParabolicType, bound: u32) -> DefectPoset {
    let indices = p.quotient_indices();
    let template = QuotientCoweight::new(p, vec![0; indices.len()]).expect("matching length");
    let elements: Vec<QuotientCoweight> = Coweight::positive_up_to_height(indices.len(), bound)
        .into_iter()
        .map(|c| template.with_coords(c.into_coords()))
        .collect();
    let position: std::collections::HashMap<&[i64], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.coords(), i))
        .collect();
    let mut covers = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        for k in 0..indices.len() {
            let mut up = e.coords().to_vec();
            up[k] += 1;
            if let Some(&j) = position.get(up.as_slice()) {
                covers.push((i, j));
            }
        }
    }
    covers.sort();
    DefectPoset {
        parabolic: p.clone(),
        bound,
        elements,
        covers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{build_root_system, RootSystemSpec};

    fn rs(series: char, rank: usize) -> RootSystem {
        build_root_system(&RootSystemSpec::series(series, rank)).unwrap()
    }

    fn borel_q(rank: usize, v: &[i64]) -> QuotientCoweight {
        QuotientCoweight::new(&ParabolicType::borel(rank), v.to_vec()).unwrap()
    }

    #[test]
    fn parabolic_strata_examples() {
        let a1 = enumerate_parabolic_strata(&rs('A', 1));
        assert_eq!(a1.len(), 2);
        assert!(a1[0].parabolic.is_borel());
        assert_eq!(a1[1].point, vec![1]);
        assert_eq!(enumerate_parabolic_strata(&rs('A', 2)).len(), 4);
        let a3 = enumerate_parabolic_strata(&rs('A', 3));
        assert_eq!(a3[0].point, vec![0, 0, 0]);
        assert_eq!(a3.last().unwrap().point, vec![1, 1, 1]);
        let levis: Vec<Vec<usize>> = a3.iter().map(|s| s.repr().levi).collect();
        assert_eq!(levis[1..4], [vec![1], vec![2], vec![3]]);
        assert_eq!(levis[4], vec![1, 2]);
    }

    #[test]
    fn local_strata_examples() {
        let a1 = rs('A', 1);
        let b1 = ParabolicType::borel(1);
        assert_eq!(enumerate_local_strata(&a1, &b1, &borel_q(1, &[2])).unwrap().len(), 6);
        let zero = enumerate_local_strata(&a1, &b1, &borel_q(1, &[0])).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].repr().mu, vec![0]);
        let a2 = rs('A', 2);
        let s = enumerate_local_strata(&a2, &ParabolicType::borel(2), &borel_q(2, &[1, 1])).unwrap();
        assert_eq!(s.len(), 9);
        assert!(s.iter().all(|t| t.defect().coords() == [1, 1]));
        assert!(enumerate_local_strata(&a1, &b1, &borel_q(1, &[-1])).is_err());
    }

    #[test]
    fn local_strata_over_a_parabolic() {
        let a3 = rs('A', 3);
        let p = ParabolicType::new(3, [1]).unwrap();
        let theta = QuotientCoweight::new(&p, vec![2, 1]).unwrap();
        let s = enumerate_local_strata(&a3, &p, &theta).unwrap();
        assert_eq!(s.len() as u128, local_strata_count(&theta));
        assert_eq!(s.len(), 18);
        assert!(enumerate_local_strata(&a3, &ParabolicType::borel(3), &theta).is_err());
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim_defect(&rs('A', 2), &Coweight::new(vec![0, 0])).unwrap(), 0);
        assert_eq!(codim_defect(&rs('A', 1), &Coweight::new(vec![1])).unwrap(), 2);
        assert_eq!(codim_defect(&rs('A', 2), &Coweight::new(vec![1, 1])).unwrap(), 4);
        assert!(codim_defect(&rs('A', 2), &Coweight::new(vec![1, -1])).is_err());
    }

    #[test]
    fn poset_examples() {
        let a1 = rs('A', 1);
        let chain = defect_poset(&a1, &ParabolicType::borel(1), 2);
        assert_eq!(chain.elements.len(), 3);
        assert_eq!(chain.covers, vec![(0, 1), (1, 2)]);
        let single = defect_poset(&rs('A', 2), &ParabolicType::borel(2), 0);
        assert_eq!(single.elements.len(), 1);
        assert!(single.covers.is_empty());
        let a2 = defect_poset(&rs('A', 2), &ParabolicType::borel(2), 2);
        assert_eq!(a2.elements.len(), 6);
        assert!((0..6).all(|i| a2.leq(0, i)));
        let whole = defect_poset(&rs('A', 2), &ParabolicType::whole(2), 3);
        assert_eq!(whole.elements.len(), 1);
        assert_eq!(whole.codim(0), None);
    }

    #[test]
    fn covers_match_brute_force_transitive_reduction() {
        for (r, bound) in [(1, 4), (2, 4), (3, 3)] {
            let sys = rs('A', r);
            let poset = defect_poset(&sys, &ParabolicType::borel(r), bound);
            let n = poset.elements.len();
            let lt = |a: usize, b: usize| a != b && poset.leq(a, b);
            let mut brute = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                        brute.push((a, b));
                    }
                }
            }
            brute.sort();
            assert_eq!(poset.covers, brute);
            for &(a, b) in &poset.covers {
                assert!(poset.codim(a).unwrap() < poset.codim(b).unwrap());
            }
        }
    }

    #[test]
    fn dot_output() {
        let poset = defect_poset(&rs('A', 1), &ParabolicType::borel(1), 1);
        assert_eq!(
            poset.to_dot(),
            "digraph defect_poset {\n  rankdir=BT;\n  n0 [label=\"(0)\\ncodim 0\"];\n  n1 [label=\"(1)\\ncodim 2\"];\n  n0 -> n1;\n}\n"
        );
    }

    #[test]
    fn defect_pair() {
        let d = DefectPair::new(borel_q(2, &[1, 0])).unwrap();
        let (l1, l2) = d.at(&borel_q(2, &[3, 5])).unwrap();
        assert_eq!(l1.coords(), &[2, 5]);
        assert_eq!(l2.checked_sub(&l1).unwrap(), d.defect);
        assert!(DefectPair::new(borel_q(2, &[-1, 0])).is_err());
    }

    #[test]
    fn middle_defects_count_outer_splittings() {
        // For fixed theta, the number of triples with middle term mu equals the
        // number of splittings theta1 + theta2 = theta - mu.
        let sys = rs('A', 2);
        let p = ParabolicType::borel(2);
        for c in Coweight::positive_up_to_height(2, 4) {
            let theta = borel_q(2, c.coords());
            let triples = enumerate_local_strata(&sys, &p, &theta).unwrap();
            for mu in quotient_box(&theta) {
                let with_mu = triples.iter().filter(|t| t.mu == mu).count();
                let rest = theta.checked_sub(&mu).unwrap();
                let splittings = quotient_box(&rest).len();
                assert_eq!(with_mu, splittings);
            }
        }
    }
}
