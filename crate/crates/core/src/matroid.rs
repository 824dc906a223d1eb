//! Represented matroids: rank oracle, minors, simplification, connectivity,
//! κ between sets, linking minors and cyclic flats.

use std::collections::HashMap;

use crate::error::{precondition, Error, Result};
use crate::field::{Field, FieldRef};
use crate::limits::limits;
use crate::linalg::{normalize, EchelonBasis, Mat};

/// The matroid M(A) of a labelled matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatroid {
    mat: Mat,
    rank: usize,
}

/// Rank of every subset of a list of vectors, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct RankTable {
    pub n: usize,
    pub ranks: Vec<u8>,
}

impl RankTable {
    /// Ranks of `base ∪ S` for every subset `S` of `vecs`, minus nothing:
    /// the stored value is the full rank of the union.
    pub fn build(field: &Field, vecs: &[Vec<u32>], base: &EchelonBasis) -> Result<RankTable> {
        let n = vecs.len();
        let max = limits().max_classes;
        if n > max {
            return Err(Error::SizeBound(format!(
                "{n} items exceed the enumeration bound of {max}"
            )));
        }
        let full = {
            let mut b = base.clone();
            for v in vecs {
                b.insert(field, v);
            }
            b.len()
        };
        let mut ranks = vec![0u8; 1usize << n];
        fill(field, vecs, 0, 0, base, full, &mut ranks);
        Ok(RankTable { n, ranks })
    }

    #[inline]
    pub fn rank(&self, mask: usize) -> usize {
        self.ranks[mask] as usize
    }

    pub fn full_mask(&self) -> usize {
        (1usize << self.n) - 1
    }
}

fn fill(field: &Field, vecs: &[Vec<u32>], i: usize, mask: usize, basis: &EchelonBasis, full: usize, out: &mut [u8]) {
    let n = vecs.len();
    if basis.len() == full {
        // Every superset within the remaining items has full rank.
        let rest = n - i;
        for sub in 0..(1usize << rest) {
            out[mask | (sub << i)] = full as u8;
        }
        return;
    }
    if i == n {
        out[mask] = basis.len() as u8;
        return;
    }
    fill(field, vecs, i + 1, mask, basis, full, out);
    let mut next = basis.clone();
    next.insert(field, &vecs[i]);
    fill(field, vecs, i + 1, mask | (1 << i), &next, full, out);
}

/// Parallel classes of nonloops (each sorted by index, listed by first
/// member) and the loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classes {
    pub classes: Vec<Vec<usize>>,
    pub loops: Vec<usize>,
}

/// A separation `(side, rest)` given by labels.
/// Two hyperplanes whose union is the ground set, by label.
pub type HyperplaneCover = (Vec<String>, Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub side: Vec<String>,
    pub rest: Vec<String>,
    pub lambda: usize,
}

impl RepMatroid {
    /// Wrap a matrix; unlabelled columns get `e1, e2, …`.
    pub fn new(mat: Mat) -> RepMatroid {
        let mat = if mat.labels().is_some() {
            mat
        } else {
            let l = mat.labels_or_default();
            mat.with_labels(l).expect("default labels are distinct")
        };
        let rank = mat.rank();
        RepMatroid { mat, rank }
    }

    pub fn matrix(&self) -> &Mat {
        &self.mat
    }
    pub fn field(&self) -> &FieldRef {
        self.mat.field()
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn size(&self) -> usize {
        self.mat.cols()
    }
    pub fn labels(&self) -> &[String] {
        self.mat.labels().expect("always labelled")
    }
    pub fn label(&self, i: usize) -> &str {
        &self.labels()[i]
    }
    pub fn column(&self, i: usize) -> Vec<u32> {
        self.mat.column(i)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.mat.index_of(label)
    }

    pub fn indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let i = self.index_of(l.as_ref())?;
            if !out.contains(&i) {
                out.push(i);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn labels_of(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.labels()[i].clone()).collect()
    }

    pub fn complement(&self, idx: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size()];
        for &i in idx {
            inside[i] = true;
        }
        (0..self.size()).filter(|&i| !inside[i]).collect()
    }

    pub fn rank_of(&self, idx: &[usize]) -> usize {
        self.mat.rank_of_columns(idx)
    }

    pub fn closure(&self, idx: &[usize]) -> Vec<usize> {
        let f = self.field();
        let mut b = EchelonBasis::new();
        for &i in idx {
            b.insert(f, &self.column(i));
        }
        (0..self.size()).filter(|&e| b.contains(f, &self.column(e))).collect()
    }

    pub fn lambda(&self, idx: &[usize]) -> usize {
        let rest = self.complement(idx);
        self.rank_of(idx) + self.rank_of(&rest) - self.rank
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.column(i).iter().all(|&a| a == 0)
    }

    pub fn is_independent(&self, idx: &[usize]) -> bool {
        self.rank_of(idx) == idx.len()
    }

    /// Restriction to the given columns, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> RepMatroid {
        RepMatroid::new(self.mat.select_columns(keep))
    }

    pub fn delete(&self, idx: &[usize]) -> RepMatroid {
        self.restrict(&self.complement(idx))
    }

    /// Minor `M / contract \ delete`. With `keep_loops` the contracted
    /// elements stay behind as loops (so `M / e = (M ⫽ e) \ e`).
    pub fn minor(&self, delete: &[usize], contract: &[usize], keep_loops: bool) -> Result<RepMatroid> {
        if let Some(&i) = delete.iter().find(|i| contract.contains(i)) {
            return Err(Error::LabelOverlap(self.label(i).to_string()));
        }
        let f = self.field().clone();
        let rows = self.mat.rows();
        // Independent subset of the contraction set, pivoted to unit vectors.
        let mut basis = EchelonBasis::new();
        let mut indep = Vec::new();
        for &c in contract {
            if basis.insert(&f, &self.column(c)) {
                indep.push(c);
            }
        }
        let k = indep.len();
        let mut cols: Vec<Vec<u32>> = indep.iter().map(|&c| self.column(c)).collect();
        let mut ext = EchelonBasis::new();
        for c in &cols {
            ext.insert(&f, c);
        }
        for i in 0..rows {
            let mut e = vec![0u32; rows];
            e[i] = 1;
            if ext.insert(&f, &e) {
                cols.push(e);
            }
        }
        let change = Mat::from_columns(&f, rows, &cols)?.inverse()?;
        let reduced = change.mul(&self.mat.clone().without_labels())?;
        let keep_rows: Vec<usize> = (k..rows).collect();
        let reduced = reduced.select_rows(&keep_rows);
        let keep_cols: Vec<usize> = (0..self.size())
            .filter(|i| !delete.contains(i) && (keep_loops || !contract.contains(i)))
            .collect();
        let m = reduced
            .select_columns(&keep_cols)
            .with_labels(self.labels_of(&keep_cols))?;
        Ok(RepMatroid::new(m))
    }

    pub fn minor_by_labels<S: AsRef<str>>(&self, delete: &[S], contract: &[S], keep_loops: bool) -> Result<RepMatroid> {
        let d: Vec<usize> = delete
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<_>>()?;
        let c: Vec<usize> = contract
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<_>>()?;
        self.minor(&d, &c, keep_loops)
    }

    pub fn parallel_classes(&self) -> Classes {
        let f = self.field();
        let mut by_point: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut loops = Vec::new();
        for j in 0..self.size() {
            match normalize(f, &self.column(j)) {
                None => loops.push(j),
                Some((v, _)) => {
                    let next = classes.len();
                    let c = *by_point.entry(v).or_insert(next);
                    if c == next {
                        classes.push(Vec::new());
                    }
                    classes[c].push(j);
                }
            }
        }
        Classes { classes, loops }
    }

    /// Number of parallel classes of nonloops.
    pub fn epsilon(&self) -> usize {
        self.parallel_classes().classes.len()
    }

    /// Lexicographically least label of each class, in column order.
    pub fn simple_representatives(&self) -> Vec<usize> {
        let labels = self.labels();
        let mut reps: Vec<usize> = self
            .parallel_classes()
            .classes
            .iter()
            .map(|c| *c.iter().min_by(|&&a, &&b| labels[a].cmp(&labels[b])).unwrap())
            .collect();
        reps.sort_unstable();
        reps
    }

    pub fn simplify(&self) -> RepMatroid {
        self.restrict(&self.simple_representatives())
    }

    fn class_vectors(&self, classes: &Classes) -> Vec<Vec<u32>> {
        classes.classes.iter().map(|c| self.column(c[0])).collect()
    }

    /// Rank table over parallel classes.
    pub fn class_rank_table(&self) -> Result<(Classes, RankTable)> {
        let classes = self.parallel_classes();
        let vecs = self.class_vectors(&classes);
        let t = RankTable::build(self.field(), &vecs, &EchelonBasis::new())?;
        Ok((classes, t))
    }

    /// Rank table over single elements.
    pub fn element_rank_table(&self) -> Result<RankTable> {
        RankTable::build(self.field(), &self.mat.columns(), &EchelonBasis::new())
    }

    fn expand(&self, classes: &Classes, mask: usize, with_loops: bool) -> Vec<usize> {
        let mut out: Vec<usize> = classes
            .classes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        if with_loops {
            out.extend(&classes.loops);
        }
        out.sort_unstable();
        out
    }

    /// Decide vertical k-connectivity: no set `A` with
    /// `λ(A) < k' ≤ min(r(A), r(E−A))` for any `k' ≤ k`. Pass `usize::MAX`
    /// for roundness. Returns the first violating separation found.
    pub fn vertical_connectivity(&self, k: usize) -> Result<Option<Separation>> {
        let (classes, t) = self.class_rank_table()?;
        let full = t.full_mask();
        let r = self.rank;
        for mask in 0..=full {
            let ra = t.rank(mask);
            let rb = t.rank(full ^ mask);
            let lam = ra + rb - r;
            if lam < k.min(ra).min(rb) {
                let side = self.expand(&classes, mask, true);
                let rest = self.complement(&side);
                return Ok(Some(Separation {
                    side: self.labels_of(&side),
                    rest: self.labels_of(&rest),
                    lambda: lam,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_vertically_connected(&self, k: usize) -> Result<bool> {
        Ok(self.vertical_connectivity(k)?.is_none())
    }

    /// Hyperplanes as sets of class indices.
    pub fn hyperplanes(&self) -> Result<(Classes, Vec<Vec<bool>>)> {
        let classes = self.parallel_classes();
        let vecs = self.class_vectors(&classes);
        let m = vecs.len();
        let f = self.field().clone();
        let r = self.rank;
        if r == 0 {
            return Ok((classes, Vec::new()));
        }
        let need = r - 1;
        if binomial(m, need) > 2_000_000 {
            return Err(Error::SizeBound(format!(
                "{m} classes at rank {r}: too many {need}-subsets for hyperplane enumeration"
            )));
        }
        let mut seen: std::collections::HashSet<Vec<bool>> = std::collections::HashSet::new();
        let mut hyps = Vec::new();
        let mut chosen = Vec::with_capacity(need);
        subsets_of_size(m, need, &mut chosen, 0, &mut |s: &[usize]| {
            let mut b = EchelonBasis::new();
            for &i in s {
                b.insert(&f, &vecs[i]);
            }
            if b.len() != need {
                return;
            }
            let h: Vec<bool> = vecs.iter().map(|v| b.contains(&f, v)).collect();
            if seen.insert(h.clone()) {
                hyps.push(h);
            }
        });
        Ok((classes, hyps))
    }

    /// Roundness: E is not the union of two hyperplanes. Returns the first
    /// covering pair (as label sets) when not round.
    pub fn is_round(&self) -> Result<(bool, Option<HyperplaneCover>)> {
        let (classes, hyps) = self.hyperplanes()?;
        for i in 0..hyps.len() {
            for j in i..hyps.len() {
                if hyps[i].iter().zip(&hyps[j]).all(|(&a, &b)| a || b) {
                    let to_labels = |h: &Vec<bool>| {
                        let mask: Vec<usize> = (0..h.len()).filter(|&c| h[c]).collect();
                        let mut idx: Vec<usize> = mask.iter().flat_map(|&c| classes.classes[c].clone()).collect();
                        idx.extend(&classes.loops);
                        idx.sort_unstable();
                        self.labels_of(&idx)
                    };
                    return Ok((false, Some((to_labels(&hyps[i]), to_labels(&hyps[j])))));
                }
            }
        }
        Ok((true, None))
    }

    /// κ(A, B) = min λ(Z) over A ⊆ Z ⊆ E − B.
    pub fn kappa(&self, a: &[usize], b: &[usize]) -> Result<usize> {
        Ok(self.kappa_witness(a, b)?.1)
    }

    /// κ(A, B) together with a minimizing Z.
    pub fn kappa_witness(&self, a: &[usize], b: &[usize]) -> Result<(Vec<usize>, usize)> {
        if let Some(&i) = a.iter().find(|i| b.contains(i)) {
            return precondition(format!("sets share `{}`", self.label(i)));
        }
        let f = self.field().clone();
        let mut ba = EchelonBasis::new();
        for &i in a {
            ba.insert(&f, &self.column(i));
        }
        let mut bb = EchelonBasis::new();
        for &i in b {
            bb.insert(&f, &self.column(i));
        }
        // Free elements: those in cl(A) go with A, those in cl(B) with B;
        // the rest are grouped by parallel class and enumerated.
        let mut z_side: Vec<usize> = a.to_vec();
        let mut free_classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of: HashMap<Vec<u32>, usize> = HashMap::new();
        for e in 0..self.size() {
            if a.contains(&e) || b.contains(&e) {
                continue;
            }
            let col = self.column(e);
            if ba.contains(&f, &col) {
                z_side.push(e);
            } else if bb.contains(&f, &col) {
                continue;
            } else {
                let (v, _) = normalize(&f, &col).expect("nonloop");
                let next = free_classes.len();
                let c = *class_of.entry(v).or_insert(next);
                if c == next {
                    free_classes.push(Vec::new());
                }
                free_classes[c].push(e);
            }
        }
        let vecs: Vec<Vec<u32>> = free_classes.iter().map(|c| self.column(c[0])).collect();
        let ta = RankTable::build(&f, &vecs, &ba)?;
        let tb = RankTable::build(&f, &vecs, &bb)?;
        let full = ta.full_mask();
        let mut best = (usize::MAX, 0usize);
        for mask in 0..=full {
            let lam = ta.rank(mask) + tb.rank(full ^ mask) - self.rank;
            if lam < best.0 {
                best = (lam, mask);
            }
        }
        let mut z = z_side;
        for (i, c) in free_classes.iter().enumerate() {
            if best.1 >> i & 1 == 1 {
                z.extend(c);
            }
        }
        z.sort_unstable();
        Ok((z, best.0))
    }

    /// A minor N on A ∪ B with N|A = M|A, N|B = M|B and λ_N(A) = κ_M(A, B),
    /// built one element at a time (deletion preferred, then smaller label).
    pub fn linking_minor(&self, a: &[usize], b: &[usize]) -> Result<RepMatroid> {
        let target = self.kappa(a, b)?;
        let la = self.labels_of(a);
        let lb = self.labels_of(b);
        let mut current = self.clone();
        let mut others: Vec<String> = self
            .labels()
            .iter()
            .filter(|l| !la.contains(l) && !lb.contains(l))
            .cloned()
            .collect();
        others.sort();
        for e in &others {
            let (ca, cb) = (current.indices(&la)?, current.indices(&lb)?);
            let i = current.index_of(e)?;
            let del = current.minor(&[i], &[], false)?;
            let (da, db) = (del.indices(&la)?, del.indices(&lb)?);
            if del.kappa(&da, &db)? == target {
                current = del;
                continue;
            }
            let con = current.minor(&[], &[i], false)?;
            let (na, nb) = (con.indices(&la)?, con.indices(&lb)?);
            if con.kappa(&na, &nb)? != target {
                return Err(Error::Internal(format!(
                    "neither deleting nor contracting `{e}` keeps κ"
                )));
            }
            let _ = (ca, cb);
            current = con;
        }
        // Postconditions.
        let (na, nb) = (current.indices(&la)?, current.indices(&lb)?);
        if current.lambda(&na) != target
            || !same_restriction(self, &self.indices(&la)?, &current, &na)
            || !same_restriction(self, &self.indices(&lb)?, &current, &nb)
        {
            return Err(Error::Internal("linking minor failed its postconditions".into()));
        }
        Ok(current)
    }

    /// All cyclic flats (flats whose restriction has no coloops), as sorted
    /// index sets ordered by rank then lexicographically.
    pub fn cyclic_flats(&self) -> Result<Vec<Vec<usize>>> {
        let t = self.element_rank_table()?;
        let n = self.size();
        let full = t.full_mask();
        let mut out = Vec::new();
        for mask in 0..=full {
            let r = t.rank(mask);
            let closed = (0..n).all(|e| mask >> e & 1 == 1 || t.rank(mask | 1 << e) > r);
            if !closed {
                continue;
            }
            let cyclic = (0..n).all(|e| mask >> e & 1 == 0 || t.rank(mask & !(1 << e)) == r);
            if cyclic {
                out.push((r, (0..n).filter(|&e| mask >> e & 1 == 1).collect::<Vec<_>>()));
            }
        }
        out.sort();
        Ok(out.into_iter().map(|(_, s)| s).collect())
    }

    /// M simplifies to PG(n−1, q): rank n, (qⁿ−1)/(q−1) classes, and, over
    /// a larger field at rank ≥ 3, a frame normalization lands in GF(q).
    pub fn is_pg(&self, n: usize, q: u32) -> Result<bool> {
        let f = self.field();
        if !f.has_subfield_of_order(q) {
            return Err(Error::FieldMismatch);
        }
        if self.rank != n {
            return Ok(false);
        }
        let points = (q as u64).pow(n as u32).saturating_sub(1) / (q as u64 - 1);
        if self.epsilon() as u64 != points {
            return Ok(false);
        }
        if f.order() == q || n < 3 {
            return Ok(true);
        }
        Ok(crate::algebra::confine_columns(&self.simplify().matrix().clone(), q).is_some())
    }
}

/// Same rank function on the given index lists (compared position by position).
pub fn same_restriction(m1: &RepMatroid, i1: &[usize], m2: &RepMatroid, i2: &[usize]) -> bool {
    if i1.len() != i2.len() {
        return false;
    }
    let v1: Vec<Vec<u32>> = i1.iter().map(|&i| m1.column(i)).collect();
    let v2: Vec<Vec<u32>> = i2.iter().map(|&i| m2.column(i)).collect();
    let Ok(t1) = RankTable::build(m1.field(), &v1, &EchelonBasis::new()) else {
        return false;
    };
    let Ok(t2) = RankTable::build(m2.field(), &v2, &EchelonBasis::new()) else {
        return false;
    };
    t1.ranks == t2.ranks
}

/// Identical rank functions, matching elements by label.
pub fn same_matroid(m1: &RepMatroid, m2: &RepMatroid) -> Result<bool> {
    if m1.size() != m2.size() {
        return Ok(false);
    }
    let mut ordered = Vec::with_capacity(m1.size());
    for l in m1.labels() {
        ordered.push(m2.index_of(l)?);
    }
    let all: Vec<usize> = (0..m1.size()).collect();
    Ok(same_restriction(m1, &all, m2, &ordered))
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Visit every `k`-subset of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize, chosen: &mut Vec<usize>, start: usize, visit: &mut dyn FnMut(&[usize])) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    for i in start..n {
        if n - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        subsets_of_size(n, k, chosen, i + 1, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::geometry::pg_matrix;

    fn pg(n: usize, q: u32) -> RepMatroid {
        RepMatroid::new(pg_matrix(n, q).unwrap().mat)
    }

    fn mat2(rows: &[Vec<u32>]) -> RepMatroid {
        let f = make_field(2, 1).unwrap();
        RepMatroid::new(Mat::from_rows(&f, rows).unwrap())
    }

    #[test]
    fn rank_and_closure() {
        let m = pg(3, 2);
        assert_eq!(m.rank_of(&[]), 0);
        assert_eq!(m.rank(), 3);
        for a in 0..7 {
            for b in a + 1..7 {
                assert_eq!(m.closure(&[a, b]).len(), 3);
            }
        }
    }

    #[test]
    fn contraction_of_a_point_in_the_plane() {
        let m = pg(3, 2);
        let c = m.minor(&[], &[0], false).unwrap();
        assert_eq!(c.rank(), 2);
        assert_eq!(c.epsilon(), 3);
        let kept = m.minor(&[], &[0], true).unwrap();
        assert!(kept.is_loop(0));
        let kept_del = kept.minor(&[0], &[], false).unwrap();
        assert!(same_matroid(&kept_del, &c).unwrap());
        assert_eq!(
            m.minor(&[1], &[1], false).unwrap_err(),
            Error::LabelOverlap("p2".into())
        );
        assert_eq!(m.minor(&[], &[], false).unwrap(), m);
    }

    #[test]
    fn lambda_examples() {
        let m = pg(3, 2);
        assert_eq!(m.lambda(&[]), 0);
        assert_eq!(m.lambda(&[3]), 1);
        let m4 = pg(4, 2);
        let line = m4.closure(&[0, 1]);
        assert_eq!(m4.lambda(&line), 2);
        let complement = m4.complement(&line);
        assert_eq!(m4.lambda(&complement), 2);
    }

    #[test]
    fn vertical_separations() {
        let m = pg(3, 2);
        assert!(m.vertical_connectivity(usize::MAX).unwrap().is_none());
        // Two disjoint lines in rank 4 over GF(2).
        let two_lines = mat2(&[
            vec![1, 0, 1, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 0, 1, 1],
        ]);
        let sep = two_lines.vertical_connectivity(2).unwrap().unwrap();
        assert!(sep.lambda < 2);
        let line = two_lines.indices(&["e1", "e2", "e3"]).unwrap();
        assert_eq!(two_lines.lambda(&line), 0);
        // Two planes meeting in one element.
        let planes = mat2(&[
            vec![1, 0, 0, 1, 0, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 1, 0, 1, 1],
            vec![0, 0, 0, 0, 1, 1, 1],
        ]);
        let first = planes.indices(&["e1", "e2", "e3", "e4"]).unwrap();
        let second = planes.complement(&first);
        assert_eq!(planes.rank_of(&first), 3);
        assert_eq!(planes.rank_of(&second), 3);
        assert_eq!(planes.lambda(&first), 2);
        assert!(planes.vertical_connectivity(3).unwrap().is_some());
        assert!(planes.vertical_connectivity(1).unwrap().is_none());
    }

    #[test]
    fn roundness() {
        assert!(pg(3, 2).is_round().unwrap().0);
        assert!(pg(3, 3).is_round().unwrap().0);
        let u22 = mat2(&[vec![1, 0], vec![0, 1]]);
        assert!(!u22.is_round().unwrap().0);
    }

    #[test]
    fn kappa_between_skew_lines() {
        let m = pg(4, 2);
        let l1 = m.closure(&[0, 1]);
        let far = (0..15)
            .find(|&e| m.rank_of(&[l1.clone(), vec![e]].concat()) == 3)
            .unwrap();
        let other = (0..15)
            .find(|&e| m.rank_of(&[l1.clone(), vec![far, e]].concat()) == 4)
            .unwrap();
        let l2 = m.closure(&[far, other]);
        assert_eq!(m.kappa(&l1, &l2).unwrap(), 2);
        let n = m.linking_minor(&l1, &l2).unwrap();
        assert_eq!(n.size(), 6);
        let na = n.indices(&m.labels_of(&l1)).unwrap();
        assert_eq!(n.lambda(&na), 2);
    }

    #[test]
    fn cyclic_flats_examples() {
        let u23 = mat2(&[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(u23.cyclic_flats().unwrap().len(), 2);
        assert_eq!(pg(3, 2).cyclic_flats().unwrap().len(), 9);
    }

    #[test]
    fn pg_recognition() {
        assert!(pg(3, 2).is_pg(3, 2).unwrap());
        let minus = pg(3, 2).delete(&[0]);
        assert!(!minus.is_pg(3, 2).unwrap());
    }

    #[test]
    fn simplification_keeps_least_label() {
        let f = make_field(2, 1).unwrap();
        let m = Mat::from_rows(&f, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0]])
            .unwrap()
            .with_labels(vec!["b".into(), "a".into(), "c".into(), "z".into()])
            .unwrap();
        let s = RepMatroid::new(m).simplify();
        assert_eq!(s.labels(), &["a".to_string(), "c".to_string()]);
        assert_eq!(s.epsilon(), 2);
    }
}
