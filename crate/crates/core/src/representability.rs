//! Exhaustive representability search for tiny matroids over small fields.

use crate::error::{Error, Result};
use crate::field::FieldRef;
use crate::limits::limits;
use crate::linalg::{normalize, EchelonBasis, Mat};
use crate::matroid::{RankTable, RepMatroid};

pub const MAX_ELEMENTS: usize = 12;
pub const MAX_RANK: usize = 4;

/// Rank function of a represented matroid, tabulated on all subsets.
#[derive(Clone, Debug)]
pub struct RankOracle {
    pub labels: Vec<String>,
    pub rank: usize,
    table: RankTable,
}

impl RankOracle {
    pub fn new(m: &RepMatroid) -> Result<RankOracle> {
        if m.size() > MAX_ELEMENTS {
            return Err(Error::SizeBound(format!(
                "{} elements exceed the representability bound of {MAX_ELEMENTS}",
                m.size()
            )));
        }
        if m.rank() > MAX_RANK {
            return Err(Error::SizeBound(format!(
                "rank {} exceeds the representability bound of {MAX_RANK}",
                m.rank()
            )));
        }
        Ok(RankOracle {
            labels: m.labels().to_vec(),
            rank: m.rank(),
            table: m.element_rank_table()?,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn rank_of(&self, mask: usize) -> usize {
        self.table.rank(mask)
    }

    /// Exhaustive check of the rank axioms.
    pub fn check_axioms(&self) -> bool {
        let n = self.size();
        let full = (1usize << n) - 1;
        for x in 0..=full {
            let rx = self.rank_of(x);
            if rx > x.count_ones() as usize {
                return false;
            }
            for e in 0..n {
                if x & (1 << e) == 0 {
                    let ry = self.rank_of(x | (1 << e));
                    if ry < rx || ry > rx + 1 {
                        return false;
                    }
                    for f in e + 1..n {
                        if x & (1 << f) == 0 {
                            // Local submodularity implies submodularity.
                            let rf = self.rank_of(x | (1 << f));
                            let rb = self.rank_of(x | (1 << e) | (1 << f));
                            if ry + rf < rb + rx {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn circuits_through(&self) -> Vec<usize> {
        let n = self.size();
        let mut counts = vec![0usize; n];
        for x in 1usize..(1 << n) {
            let k = x.count_ones() as usize;
            if self.rank_of(x) + 1 != k {
                continue;
            }
            if (0..n)
                .filter(|&e| x & (1 << e) != 0)
                .all(|e| self.rank_of(x & !(1 << e)) == k - 1)
            {
                for (e, c) in counts.iter_mut().enumerate() {
                    if x & (1 << e) != 0 {
                        *c += 1;
                    }
                }
            }
        }
        counts
    }
}

/// Search options; `symmetry` fixes a basis and one further element.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { symmetry: true }
    }
}

struct Search<'a> {
    field: &'a FieldRef,
    oracle: &'a RankOracle,
    r: usize,
    order: Vec<usize>,
    assigned: Vec<Option<Vec<u32>>>,
    points: Vec<Vec<u32>>,
}

fn all_points(field: &FieldRef, r: usize) -> Vec<Vec<u32>> {
    let q = field.order();
    let mut out = Vec::new();
    let total = (q as u64).pow(r as u32);
    for code in 1..total {
        let mut v = Vec::with_capacity(r);
        let mut c = code;
        for _ in 0..r {
            v.push((c % q as u64) as u32);
            c /= q as u64;
        }
        v.reverse();
        if normalize(field, &v).map(|(n, _)| n == v).unwrap_or(false) {
            out.push(v);
        }
    }
    out
}

impl Search<'_> {
    /// Is `v` as the image of `e` consistent with every independent set of
    /// already assigned elements?
    fn consistent(&self, e: usize, v: &[u32], done: &[usize]) -> bool {
        let f = self.field;
        // Depth-first over subsets of `done`, extending only independent sets.
        let mut stack: Vec<(usize, usize, EchelonBasis)> = vec![(0, 0, EchelonBasis::new())];
        while let Some((start, mask, basis)) = stack.pop() {
            let with_e = self.oracle.rank_of(mask | (1 << e));
            let dependent = with_e == basis.len();
            if dependent != basis.contains(f, v) {
                return false;
            }
            if basis.len() + 1 >= self.r {
                continue;
            }
            for (i, &d) in done.iter().enumerate().skip(start) {
                let m2 = mask | (1 << d);
                if self.oracle.rank_of(m2) != basis.len() + 1 {
                    continue;
                }
                let mut b = basis.clone();
                b.insert(f, self.assigned[d].as_ref().expect("assigned"));
                stack.push((i + 1, m2, b));
            }
        }
        true
    }

    fn run(&mut self, depth: usize, done: &mut Vec<usize>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        if let Some(v) = self.assigned[e].clone() {
            if !self.consistent(e, &v, done) {
                return false;
            }
            done.push(e);
            let ok = self.run(depth + 1, done);
            done.pop();
            return ok;
        }
        let cands: Vec<Vec<u32>> = if self.oracle.rank_of(1 << e) == 0 {
            vec![vec![0; self.r]]
        } else {
            self.points.clone()
        };
        for v in cands {
            if !self.consistent(e, &v, done) {
                continue;
            }
            self.assigned[e] = Some(v);
            done.push(e);
            if self.run(depth + 1, done) {
                return true;
            }
            done.pop();
            self.assigned[e] = None;
        }
        false
    }
}

/// A matrix over `field` with the oracle's rank function, or `None`.
pub fn find_representation_with(oracle: &RankOracle, field: &FieldRef, opts: SearchOptions) -> Result<Option<Mat>> {
    let max = limits().max_field;
    if field.order() > max {
        return Err(Error::SizeBound(format!(
            "field of order {} exceeds the search bound of {max}",
            field.order()
        )));
    }
    let n = oracle.size();
    let r = oracle.rank;
    if r == 0 {
        let m = Mat::zeros(field, 0, n).with_labels(oracle.labels.clone())?;
        return Ok(Some(m));
    }
    let counts = oracle.circuits_through();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(oracle.labels[a].cmp(&oracle.labels[b])));
    let mut assigned: Vec<Option<Vec<u32>>> = vec![None; n];
    if opts.symmetry {
        let mut basis = Vec::new();
        let mut mask = 0usize;
        for &e in &order {
            if oracle.rank_of(mask | (1 << e)) > basis.len() {
                mask |= 1 << e;
                basis.push(e);
            }
        }
        for (i, &b) in basis.iter().enumerate() {
            let mut v = vec![0u32; r];
            v[i] = 1;
            assigned[b] = Some(v);
        }
        let first = order
            .iter()
            .copied()
            .find(|&e| !basis.contains(&e) && oracle.rank_of(1 << e) > 0);
        if let Some(e) = first {
            let mut v = vec![0u32; r];
            for (i, &b) in basis.iter().enumerate() {
                if oracle.rank_of((mask & !(1 << b)) | (1 << e)) == r {
                    v[i] = 1;
                }
            }
            assigned[e] = Some(v);
        }
        let mut front: Vec<usize> = basis.clone();
        front.extend(order.iter().copied().filter(|e| !basis.contains(e)));
        order = front;
    }
    let mut s = Search {
        field,
        oracle,
        r,
        order,
        assigned,
        points: all_points(field, r),
    };
    if !s.run(0, &mut Vec::new()) {
        return Ok(None);
    }
    let cols: Vec<Vec<u32>> = s.assigned.into_iter().map(|v| v.expect("complete")).collect();
    let m = Mat::from_columns(field, r, &cols)?.with_labels(oracle.labels.clone())?;
    if !reproduces(oracle, &m)? {
        return Err(Error::Internal(
            "representation does not reproduce the rank function".into(),
        ));
    }
    Ok(Some(m))
}

pub fn find_representation(m: &RepMatroid, field: &FieldRef) -> Result<Option<Mat>> {
    find_representation_with(&RankOracle::new(m)?, field, SearchOptions::default())
}

/// Compare the rank of every subset against the oracle.
pub fn reproduces(oracle: &RankOracle, m: &Mat) -> Result<bool> {
    if m.cols() != oracle.size() {
        return Ok(false);
    }
    let t = RepMatroid::new(m.clone()).element_rank_table()?;
    Ok((0..1usize << oracle.size()).all(|x| t.rank(x) == oracle.rank_of(x)))
}

/// One verdict per field, in the order given.
pub fn representability_profile(m: &RepMatroid, fields: &[FieldRef]) -> Result<Vec<(FieldRef, Option<Mat>)>> {
    let oracle = RankOracle::new(m)?;
    fields
        .iter()
        .map(|f| {
            Ok((
                f.clone(),
                find_representation_with(&oracle, f, SearchOptions::default())?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field_of_order, make_field};
    use crate::geometry::obstruction_canonical;

    fn uniform(r: usize, n: usize) -> RepMatroid {
        // Vandermonde-type columns over GF(7) give U_{r,n} for n ≤ 8.
        let f = make_field(7, 1).unwrap();
        let cols: Vec<Vec<u32>> = (0..n as u32)
            .map(|x| (0..r as u32).map(|i| f.pow(x + 1, i as i64)).collect())
            .collect();
        RepMatroid::new(Mat::from_columns(&f, r, &cols).unwrap())
    }

    #[test]
    fn uniform_lines_over_small_fields() {
        let gf2 = make_field(2, 1).unwrap();
        assert!(find_representation(&uniform(2, 3), &gf2).unwrap().is_some());
        assert!(find_representation(&uniform(2, 5), &gf2).unwrap().is_none());
        let gf4 = field_of_order(4).unwrap();
        assert!(find_representation(&uniform(2, 5), &gf4).unwrap().is_some());
        assert!(find_representation(&uniform(3, 3), &gf2).unwrap().is_some());
    }

    #[test]
    fn obstruction_not_over_gf3() {
        let o = obstruction_canonical(2).unwrap().matroid();
        let gf3 = make_field(3, 1).unwrap();
        assert!(find_representation(&o, &gf3).unwrap().is_none());
    }

    #[test]
    fn symmetry_pruning_agrees_on_small_instances() {
        let gf3 = make_field(3, 1).unwrap();
        for (r, n) in [(2, 4), (2, 5), (3, 5), (3, 6)] {
            let o = RankOracle::new(&uniform(r, n)).unwrap();
            let a = find_representation_with(&o, &gf3, SearchOptions { symmetry: true }).unwrap();
            let b = find_representation_with(&o, &gf3, SearchOptions { symmetry: false }).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "U_{{{r},{n}}}");
        }
    }

    #[test]
    fn oracle_axioms_hold() {
        assert!(RankOracle::new(&uniform(3, 6)).unwrap().check_axioms());
    }
}
