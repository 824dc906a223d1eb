//! Generators for projective and affine geometries, the two GF(q)-regular
//! family matrices over GF(q²), and the rank-3 obstruction class, each with
//! a verifier of its defining properties.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::algebra::{confine_columns, l_subspace};
use crate::error::{Error, Result};
use crate::field::{extension_of_order, field_of_order, ExtSpec, FieldRef};
use crate::linalg::{normalize, Mat, Subspace};
use crate::matroid::RepMatroid;

/// Refuse to build geometries with more columns than this.
pub const MAX_GENERATED_COLUMNS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Pg,
    Ag,
    Hat,
    Bar,
    Obstruction,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::Pg => "pg",
            FamilyKind::Ag => "ag",
            FamilyKind::Hat => "hat",
            FamilyKind::Bar => "bar",
            FamilyKind::Obstruction => "obstruction",
        };
        f.write_str(s)
    }
}

/// A generated matrix with its parameters and distinguished labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMatrix {
    pub kind: FamilyKind,
    /// Rank parameter: n for PG/HAT/BAR, h for AG, 3 for obstructions.
    pub n: usize,
    pub q: u32,
    pub mat: Mat,
    /// Named roles, e.g. `("f", "p4")`, in a fixed order.
    pub roles: Vec<(String, String)>,
    /// The distinguished set X (BAR: the added line points; OBSTRUCTION: the
    /// three extension columns). Empty otherwise.
    pub x: Vec<String>,
}

impl FamilyMatrix {
    pub fn matroid(&self) -> RepMatroid {
        RepMatroid::new(self.mat.clone())
    }

    pub fn role(&self, name: &str) -> Option<&str> {
        self.roles.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    /// Run the kind-specific verifier.
    pub fn verify(&self) -> std::result::Result<(), String> {
        match self.kind {
            FamilyKind::Pg => verify_pg(self),
            FamilyKind::Ag => verify_ag(self),
            FamilyKind::Hat => verify_hat(self),
            FamilyKind::Bar => verify_bar(self),
            FamilyKind::Obstruction => {
                let m = self.matroid();
                let x = m.indices(&self.x).map_err(|e| e.to_string())?;
                if x.len() != 3 {
                    return Err("obstruction needs exactly three distinguished columns".into());
                }
                verify_obstruction(&m, Some([x[0], x[1], x[2]])).map(|_| ())
            }
        }
    }
}

fn point_count(n: usize, q: u32) -> u64 {
    ((q as u64).pow(n as u32) - 1) / (q as u64 - 1)
}

fn check_size(count: u64) -> Result<()> {
    if count > MAX_GENERATED_COLUMNS {
        return Err(Error::SizeBound(format!(
            "{count} columns exceed the generator bound {MAX_GENERATED_COLUMNS}"
        )));
    }
    Ok(())
}

/// Normalized vectors of GF(q)ⁿ (codes `< q` of `field`), lexicographic.
fn normalized_points(n: usize, q: u32) -> Vec<Vec<u32>> {
    let total = (q as u64).pow(n as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0u32; n];
        let mut c = code;
        for i in (0..n).rev() {
            v[i] = (c % q as u64) as u32;
            c /= q as u64;
        }
        if v.iter().find(|&&a| a != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn numbered(prefix: &str, count: usize, start: usize) -> Vec<String> {
    (start..start + count).map(|i| format!("{prefix}{i}")).collect()
}

/// PG(n−1, q) over a given field containing GF(q) (entries are base codes).
pub fn pg_matrix_over(field: &FieldRef, n: usize, q: u32) -> Result<Mat> {
    if n == 0 {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    check_size(point_count(n, q))?;
    let pts = normalized_points(n, q);
    let m = Mat::from_columns(field, n, &pts)?;
    m.with_labels(numbered("p", pts.len(), 1))
}

/// One column per point of PG(n−1, q), first nonzero entry 1, lexicographic.
pub fn pg_matrix(n: usize, q: u32) -> Result<FamilyMatrix> {
    let f = field_of_order(q)?;
    Ok(FamilyMatrix {
        kind: FamilyKind::Pg,
        n,
        q,
        mat: pg_matrix_over(&f, n, q)?,
        roles: Vec::new(),
        x: Vec::new(),
    })
}

/// AG(h, q): the points of PG(h, q) with first coordinate 1.
pub fn ag_matrix(h: usize, q: u32) -> Result<FamilyMatrix> {
    let f = field_of_order(q)?;
    check_size((q as u64).pow(h as u32))?;
    let pts: Vec<Vec<u32>> = normalized_points(h + 1, q).into_iter().filter(|v| v[0] == 1).collect();
    let m = Mat::from_columns(&f, h + 1, &pts)?.with_labels(numbered("a", pts.len(), 1))?;
    Ok(FamilyMatrix {
        kind: FamilyKind::Ag,
        n: h,
        q,
        mat: m,
        roles: Vec::new(),
        x: Vec::new(),
    })
}

/// Columns `((s + tω); a)` for `(s, t) ∈ GF(q)²` (s outer) and `a` running
/// over PG(n−2, q).
pub fn hat_matrix(n: usize, q: u32) -> Result<FamilyMatrix> {
    hat_matrix_over(&extension_of_order(q)?, n)
}

/// The hat matrix over a given quadratic extension.
pub fn hat_matrix_over(ext: &ExtSpec, n: usize) -> Result<FamilyMatrix> {
    if n < 2 {
        return Err(Error::Precondition("hat matrices need n ≥ 2".into()));
    }
    let q = ext.q();
    check_size((q as u64).pow(2) * point_count(n - 1, q))?;
    let tails = normalized_points(n - 1, q);
    let mut cols = Vec::new();
    for s in 0..q {
        for t in 0..q {
            let head = ext.compose(s, t);
            for a in &tails {
                let mut c = vec![head];
                c.extend(a);
                cols.push(c);
            }
        }
    }
    let m = Mat::from_columns(&ext.ext, n, &cols)?.with_labels(numbered("h", cols.len(), 1))?;
    Ok(FamilyMatrix {
        kind: FamilyKind::Hat,
        n,
        q,
        mat: m,
        roles: Vec::new(),
        x: Vec::new(),
    })
}

/// The hat matrix together with `e₁` (label `h0`), the point to which the
/// contracted line collapses; this is the full simplification of the
/// principal-extension construction and the embedding target used by the
/// structure decision.
pub fn hat_target(n: usize, q: u32) -> Result<Mat> {
    hat_target_over(&extension_of_order(q)?, n)
}

pub fn hat_target_over(ext: &ExtSpec, n: usize) -> Result<Mat> {
    let h = hat_matrix_over(ext, n)?;
    let f = h.mat.field().clone();
    let mut e1 = vec![0u32; n];
    e1[0] = 1;
    let col = Mat::from_columns(&f, n, &[e1])?.with_labels(vec!["h0".into()])?;
    h.mat.hstack(&col)
}

/// `x0 = e₁ + ωe₂`, then `α(e₁ + ωe₂) + e₃` for `α ∈ GF(q²)*` by code, then
/// PG(n−1, q) on all n rows; `f` is the PG column equal to `e₃`.
pub fn bar_matrix(n: usize, q: u32) -> Result<FamilyMatrix> {
    bar_matrix_over(&extension_of_order(q)?, n)
}

/// The bar matrix over a given quadratic extension.
pub fn bar_matrix_over(ext: &ExtSpec, n: usize) -> Result<FamilyMatrix> {
    if n < 3 {
        return Err(Error::Precondition("bar matrices need n ≥ 3".into()));
    }
    let q = ext.q();
    let f = &ext.ext;
    check_size((q as u64).pow(2) + point_count(n, q))?;
    let w = ext.omega();
    let mut x0 = vec![0u32; n];
    x0[0] = 1;
    x0[1] = w;
    let mut cols = vec![x0.clone()];
    for alpha in 1..f.order() {
        let mut c: Vec<u32> = x0.iter().map(|&a| f.mul(alpha, a)).collect();
        c[2] = 1;
        cols.push(c);
    }
    let mut labels = numbered("x", cols.len(), 0);
    let x = labels.clone();
    let pts = normalized_points(n, q);
    let mut e3 = vec![0u32; n];
    e3[2] = 1;
    let f_index = pts.iter().position(|p| *p == e3).expect("e3 is a point");
    labels.extend(numbered("p", pts.len(), 1));
    cols.extend(pts);
    let m = Mat::from_columns(f, n, &cols)?.with_labels(labels)?;
    Ok(FamilyMatrix {
        kind: FamilyKind::Bar,
        n,
        q,
        mat: m,
        roles: vec![("x_L0".into(), "x0".into()), ("f".into(), format!("p{}", f_index + 1))],
        x,
    })
}

fn cols_are_simple(m: &Mat) -> std::result::Result<(), String> {
    let f = m.field();
    let mut seen = HashSet::new();
    for j in 0..m.cols() {
        match normalize(f, &m.column(j)) {
            None => return Err(format!("column {j} is zero")),
            Some((v, _)) => {
                if !seen.insert(v) {
                    return Err(format!("column {j} is parallel to an earlier column"));
                }
            }
        }
    }
    Ok(())
}

fn verify_pg(fm: &FamilyMatrix) -> std::result::Result<(), String> {
    let m = &fm.mat;
    if m.cols() as u64 != point_count(fm.n, fm.q) {
        return Err(format!("expected {} points", point_count(fm.n, fm.q)));
    }
    if !m.in_subfield(fm.q) {
        return Err("entries outside GF(q)".into());
    }
    cols_are_simple(m)?;
    if m.rank() != fm.n {
        return Err("rank differs from n".into());
    }
    Ok(())
}

fn verify_ag(fm: &FamilyMatrix) -> std::result::Result<(), String> {
    let m = &fm.mat;
    if m.cols() as u64 != (fm.q as u64).pow(fm.n as u32) {
        return Err("expected q^h points".into());
    }
    if (0..m.cols()).any(|j| m.get(0, j) != 1) {
        return Err("first coordinate must be 1".into());
    }
    cols_are_simple(m)?;
    if m.rank() != fm.n + 1 {
        return Err("rank differs from h+1".into());
    }
    Ok(())
}

/// Every vector whose entries after the first lie in GF(q) and are not all
/// zero is parallel to a column.
pub fn hat_coverage(m: &Mat, q: u32) -> std::result::Result<(), String> {
    let f = m.field();
    let n = m.rows();
    let points: HashSet<Vec<u32>> = (0..m.cols())
        .filter_map(|j| normalize(f, &m.column(j)).map(|(v, _)| v))
        .collect();
    let tails = (q as u64).pow(n as u32 - 1);
    for head in 0..f.order() {
        for code in 1..tails {
            let mut v = vec![head];
            let mut c = code;
            let mut tail = vec![0u32; n - 1];
            for slot in tail.iter_mut().rev() {
                *slot = (c % q as u64) as u32;
                c /= q as u64;
            }
            v.extend(tail);
            let (p, _) = normalize(f, &v).expect("nonzero tail");
            if !points.contains(&p) {
                return Err(format!("vector {v:?} is not parallel to any column"));
            }
        }
    }
    Ok(())
}

fn verify_hat(fm: &FamilyMatrix) -> std::result::Result<(), String> {
    let m = &fm.mat;
    let expected = (fm.q as u64).pow(2) * point_count(fm.n - 1, fm.q);
    if m.cols() as u64 != expected {
        return Err(format!("expected {expected} columns"));
    }
    cols_are_simple(m)?;
    if m.rank() != fm.n {
        return Err("rank differs from n".into());
    }
    hat_coverage(m, fm.q)
}

fn verify_bar(fm: &FamilyMatrix) -> std::result::Result<(), String> {
    let m = fm.matroid();
    let q = fm.q;
    cols_are_simple(&fm.mat)?;
    if m.rank() != fm.n {
        return Err("rank differs from n".into());
    }
    if fm.x.len() as u32 != q * q {
        return Err("X must have q² elements".into());
    }
    let xl0 = fm.role("x_L0").ok_or("missing x_L0")?;
    let f = fm.role("f").ok_or("missing f")?;
    let idx = m.indices(&[xl0, f]).map_err(|e| e.to_string())?;
    let line = m.closure(&idx);
    if line.len() as u32 != q * q + 1 {
        return Err(format!("line through x_L0 and f has {} points", line.len()));
    }
    let mut expected = m.indices(&fm.x).map_err(|e| e.to_string())?;
    expected.push(m.index_of(f).map_err(|e| e.to_string())?);
    expected.sort_unstable();
    if line != expected {
        return Err("X ∪ {f} is not the line through x_L0 and f".into());
    }
    let pg_block = m.complement(&m.indices(&fm.x).map_err(|e| e.to_string())?);
    let n_block = m.restrict(&pg_block);
    if !n_block.is_pg(fm.n, q).map_err(|e| e.to_string())? {
        return Err("deleting X does not leave PG(n−1,q)".into());
    }
    Ok(())
}

/// Result of checking membership in the obstruction class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionWitness {
    /// The three extension elements.
    pub x: Vec<String>,
    /// Their L-subspaces after confining the projective plane to GF(q).
    pub l: Vec<Subspace>,
}

fn extension_spec(m: &RepMatroid) -> std::result::Result<ExtSpec, String> {
    ExtSpec::from_field(m.field()).map_err(|_| "matroid is not over a quadratic extension".into())
}

/// Check that `m` is (projectively) M(A | G₃) with G₃ a PG(2, q) and A a
/// rank-3 triple whose L-subspaces are 2-dimensional with trivial common
/// intersection. With `x = None` every triple is tried.
pub fn verify_obstruction(m: &RepMatroid, x: Option<[usize; 3]>) -> std::result::Result<ObstructionWitness, String> {
    let ext = extension_spec(m)?;
    let q = ext.q();
    if m.rank() != 3 {
        return Err(format!("rank {} instead of 3", m.rank()));
    }
    let expected = (q * q + q + 4) as usize;
    if m.size() != expected {
        return Err(format!("{} elements instead of {expected}", m.size()));
    }
    if m.epsilon() != m.size() {
        return Err("not simple".into());
    }
    let reduced = m.matrix().row_basis();
    let triples: Vec<[usize; 3]> = match x {
        Some(t) => vec![t],
        None => {
            let n = m.size();
            let mut v = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        v.push([a, b, c]);
                    }
                }
            }
            v
        }
    };
    let mut last = String::from("no triple checked");
    for t in triples {
        match check_triple(&reduced, &ext, t) {
            Ok(l) => return Ok(ObstructionWitness { x: m.labels_of(&t), l }),
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn check_triple(reduced: &Mat, ext: &ExtSpec, t: [usize; 3]) -> std::result::Result<Vec<Subspace>, String> {
    let q = ext.q();
    let rest: Vec<usize> = (0..reduced.cols()).filter(|j| !t.contains(j)).collect();
    let g = reduced.select_columns(&rest);
    let Some(conf) = confine_columns(&g, q) else {
        return Err("deleting X does not leave a projective plane over GF(q)".into());
    };
    if RepMatroid::new(conf.confined.clone()).epsilon() as u32 != q * q + q + 1 {
        return Err("deleting X does not leave PG(2,q)".into());
    }
    let a = conf.transform.mul(&reduced.select_columns(&t))?;
    if a.rank() != 3 {
        return Err("X is not independent".into());
    }
    let mut ls = Vec::new();
    for j in 0..3 {
        let l = l_subspace(&a.column(j), ext)?;
        if l.dim() != 2 {
            return Err(format!("L-subspace of column {j} has dimension {}", l.dim()));
        }
        ls.push(l);
    }
    let meet = ls[0]
        .intersect(&ls[1])
        .and_then(|s| s.intersect(&ls[2]))
        .map_err(|e| e.to_string())?;
    if meet.dim() != 0 {
        return Err("the three L-subspaces share a point".into());
    }
    Ok(ls)
}

impl From<Error> for String {
    fn from(e: Error) -> String {
        e.to_string()
    }
}

/// M(A | PG(2, q)) for a 3×3 matrix A over GF(q²), labelled x1..x3, p1...
pub fn obstruction_from(a: &Mat, q: u32) -> Result<FamilyMatrix> {
    let f = a.field().clone();
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::DimensionMismatch("A must be 3×3".into()));
    }
    let g = pg_matrix_over(&f, 3, q)?;
    let mat = a
        .clone()
        .with_labels(vec!["x1".into(), "x2".into(), "x3".into()])?
        .hstack(&g)?;
    let fm = FamilyMatrix {
        kind: FamilyKind::Obstruction,
        n: 3,
        q,
        mat,
        roles: Vec::new(),
        x: vec!["x1".into(), "x2".into(), "x3".into()],
    };
    fm.verify().map_err(Error::Precondition)?;
    Ok(fm)
}

/// Canonical obstruction: q = 2 uses columns (1,ω,0), (0,1,ω), (1,0,ω);
/// q = 3 uses the first enumerated member.
pub fn obstruction_canonical(q: u32) -> Result<FamilyMatrix> {
    let ext = extension_of_order(q)?;
    if q == 2 {
        let w = ext.omega();
        let a = Mat::from_columns(&ext.ext, 3, &[vec![1, w, 0], vec![0, 1, w], vec![1, 0, w]])?;
        return obstruction_from(&a, q);
    }
    obstruction_enumerate(q)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no obstruction found".into()))
}

/// All obstruction matrices A for q ∈ {2, 3}, with columns taken as
/// normalized points of PG(2, q²) in ascending order (so each member is
/// listed once up to column scaling and column order).
pub fn obstruction_enumerate(q: u32) -> Result<Vec<FamilyMatrix>> {
    if !(q == 2 || q == 3) {
        return Err(Error::SizeBound("enumeration supports q ∈ {2, 3}".into()));
    }
    let ext = extension_of_order(q)?;
    let f = &ext.ext;
    let pts: Vec<Vec<u32>> = normalized_points(3, f.order())
        .into_iter()
        .filter(|p| p.iter().any(|&a| a >= q))
        .filter(|p| normalize(f, p).map(|(v, _)| v) == Some(p.clone()))
        .collect();
    // Normalized points of PG(2,q²) that are not GF(q)-parallel. A point is
    // GF(q)-parallel iff its normalized form has all entries in GF(q).
    let ls: Vec<Subspace> = pts.iter().map(|p| l_subspace(p, &ext)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let ab = ls[a].intersect(&ls[b])?;
            for c in b + 1..pts.len() {
                if ab.intersect(&ls[c])?.dim() != 0 {
                    continue;
                }
                let m = Mat::from_columns(f, 3, &[pts[a].clone(), pts[b].clone(), pts[c].clone()])?;
                if m.rank() != 3 {
                    continue;
                }
                out.push(obstruction_from(&m, q)?);
            }
        }
    }
    Ok(out)
}

/// Point classes of a matrix, keyed by normalized vector.
pub fn point_index(m: &Mat) -> HashMap<Vec<u32>, usize> {
    let f = m.field();
    let mut out = HashMap::new();
    for j in 0..m.cols() {
        if let Some((v, _)) = normalize(f, &m.column(j)) {
            out.entry(v).or_insert(j);
        }
    }
    out
}

/// The principal-extension route to the hat family: PG(n, q) over GF(q²)
/// with `b₁ − ωb₂` appended, contracted, and simplified.
pub fn abstract_hat(n: usize, q: u32) -> Result<RepMatroid> {
    let ext = extension_of_order(q)?;
    let f = &ext.ext;
    let b = pg_matrix_over(f, n + 1, q)?;
    let mut v = vec![0u32; n + 1];
    v[0] = 1;
    v[1] = f.neg(ext.omega());
    let e = Mat::from_columns(f, n + 1, &[v])?.with_labels(vec!["e".into()])?;
    let m = RepMatroid::new(b.hstack(&e)?);
    let ei = m.index_of("e")?;
    Ok(m.minor(&[], &[ei], false)?.simplify())
}

/// The defining construction of the bar family: PG(n−1, q) over GF(q²) with
/// the points `v_L` added for each line L of the plane cl(L₀ ∪ f) missing f,
/// where L₀ = cl(e₁, e₂), f = e₃ and v = e₁ + ωe₂.
pub fn abstract_bar(n: usize, q: u32) -> Result<RepMatroid> {
    let ext = extension_of_order(q)?;
    let f = &ext.ext;
    let a = pg_matrix_over(f, n, q)?;
    let nm = RepMatroid::new(a.clone());
    let find = |v: &[u32]| -> usize {
        (0..a.cols())
            .find(|&j| a.column(j) == v)
            .expect("standard vector present")
    };
    let unit = |i: usize| {
        let mut v = vec![0u32; n];
        v[i] = 1;
        v
    };
    let (b1, b2, b3) = (find(&unit(0)), find(&unit(1)), find(&unit(2)));
    let plane = nm.closure(&[b1, b2, b3]);
    let mut v = unit(0);
    v[1] = ext.omega();
    let span_vf = Subspace::span(f, n, &[v.clone(), unit(2)]);
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for (i, &x) in plane.iter().enumerate() {
        for &y in &plane[i + 1..] {
            let l = nm.closure(&[x, y]);
            if !l.contains(&b3) && !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    let mut extra = Vec::new();
    for l in &lines {
        let span_l = Subspace::span(f, n, &[a.column(l[0]), a.column(l[1])]);
        let meet = span_l.intersect(&span_vf)?;
        if meet.dim() != 1 {
            return Err(Error::Internal("line meets the line through v and f badly".into()));
        }
        extra.push(meet.vectors()[0].clone());
    }
    let xm = Mat::from_columns(f, n, &extra)?.with_labels(numbered("x", extra.len(), 0))?;
    Ok(RepMatroid::new(xm.hstack(&a)?))
}

/// Cycle matroid of the complete graph Kₙ via its GF(2) incidence matrix.
pub fn clique_matrix(n: usize) -> Result<Mat> {
    let f = field_of_order(2)?;
    let mut cols = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut c = vec![0u32; n];
            c[i] = 1;
            c[j] = 1;
            cols.push(c);
            labels.push(format!("k{}_{}", i + 1, j + 1));
        }
    }
    Mat::from_columns(&f, n, &cols)?.with_labels(labels)
}

pub fn field_for(kind: FamilyKind, q: u32) -> Result<FieldRef> {
    match kind {
        FamilyKind::Pg | FamilyKind::Ag => field_of_order(q),
        _ => Ok(extension_of_order(q)?.ext),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg_counts_and_order() {
        assert_eq!(pg_matrix(3, 2).unwrap().mat.cols(), 7);
        assert_eq!(pg_matrix(4, 2).unwrap().mat.cols(), 15);
        let p = pg_matrix(2, 3).unwrap();
        assert_eq!(p.mat.cols(), 4);
        p.verify().unwrap();
        let cols = pg_matrix(3, 2).unwrap().mat.columns();
        let mut sorted = cols.clone();
        sorted.sort();
        assert_eq!(cols, sorted);
        assert!(cols.contains(&vec![1, 0, 0]) && cols.contains(&vec![0, 0, 1]));
    }

    #[test]
    fn ag_examples() {
        let a = ag_matrix(2, 3).unwrap();
        assert_eq!(a.mat.cols(), 9);
        assert_eq!(a.mat.rank(), 3);
        assert_eq!(ag_matrix(1, 2).unwrap().mat.cols(), 2);
        let a2 = ag_matrix(2, 2).unwrap();
        let m = a2.matroid();
        for x in 0..4 {
            for y in x + 1..4 {
                for z in y + 1..4 {
                    assert_eq!(m.rank_of(&[x, y, z]), 3);
                }
            }
        }
    }

    #[test]
    fn hat_examples() {
        let h = hat_matrix(3, 2).unwrap();
        assert_eq!(h.mat.cols(), 12);
        assert_eq!(h.mat.rank(), 3);
        h.verify().unwrap();
        hat_matrix(4, 2).unwrap().verify().unwrap();
        hat_matrix(3, 3).unwrap().verify().unwrap();
    }

    #[test]
    fn bar_examples() {
        let b = bar_matrix(3, 2).unwrap();
        assert_eq!(b.x.len(), 4);
        assert_eq!(b.mat.cols(), 11);
        assert_eq!(b.mat.rank(), 3);
        b.verify().unwrap();
        let m = b.matroid();
        let idx = m.indices(&["x0", b.role("f").unwrap()]).unwrap();
        assert_eq!(m.closure(&idx).len(), 5);
    }

    #[test]
    fn canonical_obstruction() {
        let o = obstruction_canonical(2).unwrap();
        assert_eq!(o.mat.cols(), 10);
        assert_eq!(o.mat.rank(), 3);
        o.verify().unwrap();
        let a = o.mat.select_columns(&[0, 1, 2]).without_labels();
        assert!(a.inverse().is_ok());
    }

    #[test]
    fn dependent_triple_is_rejected() {
        let ext = extension_of_order(2).unwrap();
        let w = ext.omega();
        let a = Mat::from_columns(&ext.ext, 3, &[vec![1, w, 0], vec![0, 1, w], vec![w, 0, 1]]).unwrap();
        assert_eq!(a.rank(), 2);
        assert!(obstruction_from(&a, 2).is_err());
    }

    #[test]
    fn abstract_bar_is_bar() {
        let a = abstract_bar(3, 2).unwrap();
        let b = bar_matrix(3, 2).unwrap().mat;
        let w = crate::linalg::projective_isomorphism(&a.matrix().clone(), &b, false).unwrap();
        assert!(w.is_some());
    }
}
