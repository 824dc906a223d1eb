//! The spanning-case structure decision: q-badness, embeddings into the
//! hat and bar families, and explicit obstruction minors for bad inputs.
//!
//! Coordinates: `A` and `G` share `t` rows over GF(q²) and `G` has entries
//! in GF(q) with every point of PG(t−1, q) among its columns.

use std::collections::HashMap;

use crate::algebra::{confine_columns, confine_pg, embed, l_subspace, to_base, Confinement};
use crate::error::{precondition, Error, Result};
use crate::field::ExtSpec;
use crate::geometry::{bar_matrix_over, hat_target_over, verify_obstruction, FamilyKind, ObstructionWitness};
use crate::linalg::{normalize, Mat, Subspace};
use crate::matroid::RepMatroid;

/// `L(A_y)` for every column of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LDecomposition {
    pub subspaces: Vec<Subspace>,
}

impl LDecomposition {
    pub fn of(a: &Mat, ext: &ExtSpec) -> Result<LDecomposition> {
        let subspaces = (0..a.cols())
            .map(|j| l_subspace(&a.column(j), ext))
            .collect::<Result<_>>()?;
        Ok(LDecomposition { subspaces })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(|s| s.dim()).collect()
    }

    /// Columns with a 2-dimensional L-subspace.
    pub fn wide(&self) -> Vec<usize> {
        (0..self.subspaces.len())
            .filter(|&j| self.subspaces[j].dim() == 2)
            .collect()
    }
}

/// A set `Z` of two or three columns of `A`, independent, with
/// 2-dimensional L-subspaces meeting trivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadnessCertificate {
    /// Column indices into `A`.
    pub z: Vec<usize>,
    pub labels: Vec<String>,
    pub l: Vec<Subspace>,
    pub strong: bool,
}

/// Row transform over GF(q), column scalars and target columns placing
/// `A | G` inside the hat or bar family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub target: FamilyKind,
    /// `t × t` over GF(q).
    pub transform: Mat,
    /// One nonzero scalar over GF(q²) per column of `A | G`.
    pub scalars: Vec<u32>,
    /// Target label per column; `None` for loops.
    pub injection: Vec<Option<String>>,
}

/// `(M / contract) | keep`, expected to lie in the obstruction class with
/// `x` as its three extension elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionRecipe {
    pub contract: Vec<String>,
    pub keep: Vec<String>,
    pub x: Vec<String>,
}

impl ObstructionRecipe {
    pub fn apply(&self, m: &RepMatroid) -> Result<RepMatroid> {
        let contract = m.indices(&self.contract)?;
        let keep = m.indices(&self.keep)?;
        if let Some(&i) = keep.iter().find(|i| contract.contains(i)) {
            return Err(Error::LabelOverlap(m.label(i).to_string()));
        }
        let delete: Vec<usize> = m
            .complement(&keep)
            .into_iter()
            .filter(|i| !contract.contains(i))
            .collect();
        m.minor(&delete, &contract, false)
    }

    pub fn verify(&self, m: &RepMatroid) -> std::result::Result<ObstructionWitness, String> {
        let minor = self.apply(m)?;
        let idx = minor.indices(&self.x)?;
        if idx.len() != 3 {
            return Err("recipe must name three extension elements".into());
        }
        verify_obstruction(&minor, Some([idx[0], idx[1], idx[2]]))
    }
}

/// Obstruction minors extracted from a badness certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadMinors {
    pub recipe: ObstructionRecipe,
    /// For a strong certificate with `t ≥ 5`: an obstruction inside
    /// `M / Z \ (Y − Z)`.
    pub after_contracting_z: Option<ObstructionRecipe>,
    /// Strong certificate with `t ≥ 5`. A strong certificate at `t = 4`
    /// still yields `recipe`, but `M / Z` has rank 2 there.
    pub contraction_clause: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Hat(EmbeddingCertificate),
    Bar(EmbeddingCertificate),
    Bad {
        cert: BadnessCertificate,
        minors: BadMinors,
    },
}

impl Outcome {
    pub fn token(&self) -> &'static str {
        match self {
            Outcome::Hat(_) => "HAT",
            Outcome::Bar(_) => "BAR",
            Outcome::Bad { .. } => "BAD",
        }
    }
}

/// Result of the structure decision together with the coordinates used.
#[derive(Debug, Clone)]
pub struct Decision {
    pub confinement: Confinement,
    /// The non-geometry columns after the confining transform.
    pub a: Mat,
    /// The geometry columns after confinement, over GF(q²).
    pub g: Mat,
    pub outcome: Outcome,
}

fn check_shapes(a: &Mat, g: &Mat) -> Result<ExtSpec> {
    let ext = ExtSpec::from_field(a.field())?;
    if g.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    if a.rows() != g.rows() {
        return Err(Error::DimensionMismatch("A and G differ in row count".into()));
    }
    if a.rows() < 3 {
        return precondition("the structure decision needs t ≥ 3");
    }
    if !g.in_subfield(ext.q()) {
        return precondition("G must have entries in GF(q)");
    }
    Ok(ext)
}

fn meet_all(ls: &[&Subspace]) -> Result<Subspace> {
    let mut acc = ls[0].clone();
    for l in &ls[1..] {
        acc = acc.intersect(l)?;
    }
    Ok(acc)
}

fn triple_ok(a: &Mat, ls: &[Subspace], z: [usize; 3]) -> Result<bool> {
    if a.rank_of_columns(&z) != 3 {
        return Ok(false);
    }
    Ok(meet_all(&[&ls[z[0]], &ls[z[1]], &ls[z[2]]])?.dim() == 0)
}

/// Search pairs, then triples, in column order.
pub fn q_badness(a: &Mat, g: &Mat) -> Result<Option<BadnessCertificate>> {
    let ext = check_shapes(a, g)?;
    let dec = LDecomposition::of(a, &ext)?;
    let wide = dec.wide();
    let ls = &dec.subspaces;
    let make = |z: Vec<usize>| BadnessCertificate {
        labels: a
            .labels_or_default()
            .iter()
            .enumerate()
            .filter(|(i, _)| z.contains(i))
            .map(|(_, l)| l.clone())
            .collect(),
        l: z.iter().map(|&i| ls[i].clone()).collect(),
        strong: z.len() == 2,
        z,
    };
    for (i, &x) in wide.iter().enumerate() {
        for &y in &wide[i + 1..] {
            if a.rank_of_columns(&[x, y]) == 2 && ls[x].intersect(&ls[y])?.dim() == 0 {
                return Ok(Some(make(vec![x, y])));
            }
        }
    }
    for (i, &x) in wide.iter().enumerate() {
        for (j, &y) in wide.iter().enumerate().skip(i + 1) {
            for &z in &wide[j + 1..] {
                if triple_ok(a, ls, [x, y, z])? {
                    return Ok(Some(make(vec![x, y, z])));
                }
            }
        }
    }
    Ok(None)
}

/// Recheck the defining conditions of a badness certificate.
pub fn verify_badness(a: &Mat, g: &Mat, cert: &BadnessCertificate) -> bool {
    let Ok(ext) = check_shapes(a, g) else {
        return false;
    };
    let z = &cert.z;
    if !(z.len() == 2 || z.len() == 3) || z.iter().any(|&j| j >= a.cols()) || cert.strong != (z.len() == 2) {
        return false;
    }
    if a.rank_of_columns(z) != z.len() {
        return false;
    }
    let Ok(ls) = z
        .iter()
        .map(|&j| l_subspace(&a.column(j), &ext))
        .collect::<Result<Vec<_>>>()
    else {
        return false;
    };
    if ls.iter().any(|l| l.dim() != 2) || ls != cert.l {
        return false;
    }
    let refs: Vec<&Subspace> = ls.iter().collect();
    matches!(meet_all(&refs), Ok(m) if m.dim() == 0)
}

fn target_matrix(ext: &ExtSpec, kind: FamilyKind, t: usize) -> Result<Mat> {
    match kind {
        FamilyKind::Hat => hat_target_over(ext, t),
        FamilyKind::Bar => Ok(bar_matrix_over(ext, t)?.mat),
        _ => precondition("embedding targets are the hat and bar families"),
    }
}

/// Invertible matrix over GF(q) whose first columns are `first`, completed
/// by standard basis vectors; returns its inverse.
fn basis_change(base: &crate::field::FieldRef, t: usize, first: &[Vec<u32>]) -> Result<Mat> {
    let mut cols: Vec<Vec<u32>> = first.to_vec();
    let mut b = crate::linalg::EchelonBasis::new();
    for c in &cols {
        if !b.insert(base, c) {
            return Err(Error::Internal("basis vectors are dependent".into()));
        }
    }
    for i in 0..t {
        let mut e = vec![0u32; t];
        e[i] = 1;
        if b.insert(base, &e) {
            cols.push(e);
        }
    }
    Mat::from_columns(base, t, &cols)?.inverse()
}

fn match_columns(ext: &ExtSpec, kind: FamilyKind, transform: Mat, w: &Mat) -> Result<EmbeddingCertificate> {
    let f = &ext.ext;
    let t = w.rows();
    let target = target_matrix(ext, kind, t)?;
    let labels = target.labels_or_default();
    let mut points: HashMap<Vec<u32>, (usize, u32)> = HashMap::new();
    for j in 0..target.cols() {
        if let Some((v, lead)) = normalize(f, &target.column(j)) {
            points.entry(v).or_insert((j, lead));
        }
    }
    let moved = embed(&transform, ext)?.mul(&w.clone().without_labels())?;
    let mut scalars = Vec::with_capacity(w.cols());
    let mut injection = Vec::with_capacity(w.cols());
    for j in 0..w.cols() {
        match normalize(f, &moved.column(j)) {
            None => {
                scalars.push(1);
                injection.push(None);
            }
            Some((v, lead)) => {
                let &(k, tl) = points.get(&v).ok_or_else(|| {
                    Error::Internal(format!(
                        "column {} has no image in the {kind} family",
                        w.labels_or_default()[j]
                    ))
                })?;
                scalars.push(f.div(tl, lead));
                injection.push(Some(labels[k].clone()));
            }
        }
    }
    Ok(EmbeddingCertificate {
        target: kind,
        transform,
        scalars,
        injection,
    })
}

/// Embedding certificate for a matrix that is not q-bad, following the
/// case analysis of the equivalence proof.
pub fn embed_certificate(a: &Mat, g: &Mat) -> Result<EmbeddingCertificate> {
    let ext = check_shapes(a, g)?;
    let base = &ext.base;
    let t = a.rows();
    if q_badness(a, g)?.is_some() {
        return Err(Error::Internal("embedding requested for a q-bad matrix".into()));
    }
    let dec = LDecomposition::of(a, &ext)?;
    let wide = dec.wide();
    let w = a.hstack(g)?;
    let cert = if wide.is_empty() {
        match_columns(&ext, FamilyKind::Hat, Mat::identity(base, t), &w)?
    } else {
        let refs: Vec<&Subspace> = wide.iter().map(|&j| &dec.subspaces[j]).collect();
        let common = meet_all(&refs)?;
        if common.dim() > 0 {
            let c = common.vectors()[0].clone();
            match_columns(&ext, FamilyKind::Hat, basis_change(base, t, &[c])?, &w)?
        } else {
            let mut plane = Subspace::zero(base, t);
            for l in &refs {
                plane = plane.sum(l)?;
            }
            if plane.dim() != 3 || a.rank_of_columns(&wide) != 2 {
                return Err(Error::Internal(
                    "neither family applies to a matrix that is not q-bad".into(),
                ));
            }
            let span = Subspace::span(&ext.ext, t, &wide.iter().map(|&j| a.column(j)).collect::<Vec<_>>());
            let v = crate::algebra::subfield_vector_in_span(&plane, &span, &ext)?;
            let y = *wide
                .iter()
                .find(|&&j| !dec.subspaces[j].contains_vector(&v))
                .ok_or_else(|| Error::Internal("every L-subspace contains v".into()))?;
            let col = a.column(y);
            let u: Vec<u32> = col.iter().map(|&x| ext.decompose(x).0).collect();
            let u2: Vec<u32> = col.iter().map(|&x| ext.decompose(x).1).collect();
            match_columns(&ext, FamilyKind::Bar, basis_change(base, t, &[u, u2, v])?, &w)?
        }
    };
    if !verify_certificate(a, g, &cert) {
        return Err(Error::Internal("embedding certificate failed verification".into()));
    }
    Ok(cert)
}

/// Replay the transform and scalars and compare with the target columns.
pub fn verify_certificate(a: &Mat, g: &Mat, cert: &EmbeddingCertificate) -> bool {
    let Ok(ext) = check_shapes(a, g) else {
        return false;
    };
    let t = a.rows();
    let Ok(w) = a.hstack(g) else {
        return false;
    };
    let tr = &cert.transform;
    if tr.field() != &ext.base || tr.rows() != t || tr.cols() != t || tr.rank() != t {
        return false;
    }
    if cert.scalars.len() != w.cols() || cert.injection.len() != w.cols() || cert.scalars.contains(&0) {
        return false;
    }
    let Ok(target) = target_matrix(&ext, cert.target, t) else {
        return false;
    };
    let Ok(moved) = embed(tr, &ext).and_then(|e| e.mul(&w.clone().without_labels())) else {
        return false;
    };
    let Ok(moved) = moved.scale_columns(&cert.scalars) else {
        return false;
    };
    (0..w.cols()).all(|j| {
        let col = moved.column(j);
        match &cert.injection[j] {
            None => col.iter().all(|&x| x == 0),
            Some(l) => target.index_of(l).map(|k| target.column(k) == col).unwrap_or(false),
        }
    })
}

/// GF(q) points among the columns of `g` (first column of each point),
/// as `(index, vector over GF(q))`.
fn g_points(g: &Mat, ext: &ExtSpec) -> Result<Vec<(usize, Vec<u32>)>> {
    let base = to_base(&g.clone().without_labels(), ext)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for j in 0..base.cols() {
        if let Some((v, _)) = normalize(&ext.base, &base.column(j)) {
            if seen.insert(v.clone()) {
                out.push((j, v));
            }
        }
    }
    Ok(out)
}

/// In a rank-3 matroid with a GF(q)-plane on `plane`, pick `need`
/// candidates that together with `fixed` form an obstruction triple.
fn complete_triple(
    m: &RepMatroid,
    ext: &ExtSpec,
    plane: &[usize],
    fixed: &[usize],
    cands: &[usize],
) -> Result<Option<Vec<usize>>> {
    let reduced = m.matrix().row_basis();
    if reduced.rows() != 3 {
        return Ok(None);
    }
    let Some(conf) = confine_columns(&reduced.select_columns(plane), ext.q()) else {
        return Ok(None);
    };
    let coords = conf.transform.mul(&reduced.without_labels())?;
    let l_of = |j: usize| l_subspace(&coords.column(j), ext);
    let fixed_l: Vec<Subspace> = fixed.iter().map(|&j| l_of(j)).collect::<Result<_>>()?;
    if fixed_l.iter().any(|l| l.dim() != 2) {
        return Ok(None);
    }
    let mut wide = Vec::new();
    for &c in cands {
        let l = l_of(c)?;
        if l.dim() == 2 {
            wide.push((c, l));
        }
    }
    let need = 3 - fixed.len();
    let ok = |chosen: &[usize], ls: Vec<&Subspace>| -> Result<bool> {
        let mut all: Vec<usize> = fixed.to_vec();
        all.extend(chosen);
        if coords.rank_of_columns(&all) != 3 {
            return Ok(false);
        }
        let mut refs: Vec<&Subspace> = fixed_l.iter().collect();
        refs.extend(ls);
        Ok(meet_all(&refs)?.dim() == 0)
    };
    match need {
        2 => {
            for i in 0..wide.len() {
                for j in i + 1..wide.len() {
                    if ok(&[wide[i].0, wide[j].0], vec![&wide[i].1, &wide[j].1])? {
                        return Ok(Some(vec![wide[i].0, wide[j].0]));
                    }
                }
            }
        }
        3 => {
            for i in 0..wide.len() {
                for j in i + 1..wide.len() {
                    for k in j + 1..wide.len() {
                        let pick = [wide[i].0, wide[j].0, wide[k].0];
                        if ok(&pick, vec![&wide[i].1, &wide[j].1, &wide[k].1])? {
                            return Ok(Some(pick.to_vec()));
                        }
                    }
                }
            }
        }
        _ => return Err(Error::Internal("unsupported completion size".into())),
    }
    Ok(None)
}

/// Labels of `g`-points lying in `s`.
fn points_in(points: &[(usize, Vec<u32>)], s: &Subspace) -> Vec<usize> {
    points
        .iter()
        .filter(|(_, v)| s.contains_vector(v))
        .map(|(j, _)| *j)
        .collect()
}

/// Build a recipe on `M(A | G)` and search for the missing extension
/// elements inside the minor.
fn search_recipe(
    m: &RepMatroid,
    ext: &ExtSpec,
    contract: Vec<usize>,
    plane: Vec<usize>,
    fixed: Vec<usize>,
    cands: Vec<usize>,
) -> Result<Option<ObstructionRecipe>> {
    let mut keep: Vec<usize> = plane.iter().chain(&fixed).chain(&cands).copied().collect();
    keep.sort_unstable();
    let delete: Vec<usize> = m
        .complement(&keep)
        .into_iter()
        .filter(|i| !contract.contains(i))
        .collect();
    let minor = m.minor(&delete, &contract, false)?;
    let local = |idx: &[usize]| minor.indices(&m.labels_of(idx));
    let chosen = complete_triple(&minor, ext, &local(&plane)?, &local(&fixed)?, &local(&cands)?)?;
    let Some(chosen) = chosen else {
        return Ok(None);
    };
    let mut x = m.labels_of(&fixed);
    x.extend(minor.labels_of(&chosen));
    let mut keep = m.labels_of(&plane);
    keep.extend(x.iter().cloned());
    Ok(Some(ObstructionRecipe {
        contract: m.labels_of(&contract),
        keep,
        x,
    }))
}

/// Explicit obstruction minors of `M(A | G)` for a badness certificate.
pub fn o_minor_from_bad(a: &Mat, g: &Mat, cert: &BadnessCertificate) -> Result<BadMinors> {
    let ext = check_shapes(a, g)?;
    if !verify_badness(a, g, cert) {
        return precondition("badness certificate fails verification");
    }
    let base = &ext.base;
    let t = a.rows();
    let w = a.hstack(g)?;
    let m = RepMatroid::new(w);
    let na = a.cols();
    let points: Vec<(usize, Vec<u32>)> = g_points(g, &ext)?.into_iter().map(|(j, v)| (j + na, v)).collect();
    let z = &cert.z;
    let fail = || Error::Internal("obstruction construction failed".into());
    let (recipe, after, contraction_clause) = if cert.strong {
        if t < 4 {
            return Err(Error::Internal("strong certificate in rank 3".into()));
        }
        let (l1, l2) = (&cert.l[0], &cert.l[1]);
        let s4 = l1.sum(l2)?;
        let v1 = l1.vectors()[0].clone();
        let h = Subspace::span(base, t, std::slice::from_ref(&v1)).sum(l2)?;
        let plane = points_in(&points, &h);
        let cands: Vec<usize> = points_in(&points, &s4)
            .into_iter()
            .filter(|j| !plane.contains(j))
            .collect();
        let recipe = search_recipe(&m, &ext, vec![z[0]], plane, vec![z[1]], cands)?.ok_or_else(fail)?;
        let mut after = None;
        if let Some((_, g5)) = points.iter().find(|(_, v)| !s4.contains_vector(v)) {
            let s5 = s4.sum(&Subspace::span(base, t, std::slice::from_ref(g5)))?;
            let v2 = l2.vectors()[0].clone();
            let h5 = Subspace::span(base, t, &[v1, v2, g5.clone()]);
            let plane = points_in(&points, &h5);
            let cands: Vec<usize> = points_in(&points, &s5)
                .into_iter()
                .filter(|j| !plane.contains(j))
                .collect();
            after = Some(search_recipe(&m, &ext, z.clone(), plane, vec![], cands)?.ok_or_else(fail)?);
        }
        (recipe, after, t >= 5)
    } else {
        let mut p = Subspace::zero(base, t);
        for l in &cert.l {
            p = p.sum(l)?;
        }
        if p.dim() != 3 {
            return Err(Error::Internal("triple certificate spans more than a plane".into()));
        }
        let mut keep = m.labels_of(&points_in(&points, &p));
        keep.extend(m.labels_of(z));
        let recipe = ObstructionRecipe {
            contract: Vec::new(),
            keep,
            x: m.labels_of(z),
        };
        (recipe, None, false)
    };
    for r in std::iter::once(&recipe).chain(after.iter()) {
        r.verify(&m)
            .map_err(|e| Error::Internal(format!("obstruction recipe fails verification: {e}")))?;
    }
    Ok(BadMinors {
        recipe,
        after_contracting_z: after,
        contraction_clause,
    })
}

/// Decide the structure of `M(W)` where the columns `pg_labels` form a
/// spanning PG(r−1, q)-restriction and W is over GF(q²).
pub fn decide_structure<S: AsRef<str>>(w: &Mat, pg_labels: &[S]) -> Result<Decision> {
    let ext = ExtSpec::from_field(w.field())?;
    let q = ext.q();
    let m = RepMatroid::new(w.clone());
    let pg = m.indices(pg_labels)?;
    let r = m.rank();
    let gmat = m.matrix().select_columns(&pg);
    if gmat.rank() != r {
        return precondition("the geometry columns do not span");
    }
    let conf = confine_pg(&gmat, r, q)?;
    let rest = m.complement(&pg);
    let moved = conf.transform.mul(m.matrix())?;
    let a = moved.select_columns(&rest);
    let g = moved
        .select_columns(&pg)
        .scale_columns(&conf.scalars)?
        .with_labels(m.labels_of(&pg))?;
    let outcome = match q_badness(&a, &g)? {
        Some(cert) => {
            let minors = o_minor_from_bad(&a, &g, &cert)?;
            for r in std::iter::once(&minors.recipe).chain(minors.after_contracting_z.iter()) {
                r.verify(&m)
                    .map_err(|e| Error::Internal(format!("recipe fails on the input matroid: {e}")))?;
            }
            Outcome::Bad { cert, minors }
        }
        None => {
            let cert = embed_certificate(&a, &g)?;
            match cert.target {
                FamilyKind::Hat => Outcome::Hat(cert),
                _ => Outcome::Bar(cert),
            }
        }
    };
    Ok(Decision {
        confinement: conf,
        a,
        g,
        outcome,
    })
}

/// Recheck a decision against its input: the confinement replays, and the
/// certificate or recipe verifies.
pub fn verify_decision<S: AsRef<str>>(w: &Mat, pg_labels: &[S], d: &Decision) -> bool {
    let m = RepMatroid::new(w.clone());
    let Ok(pg) = m.indices(pg_labels) else {
        return false;
    };
    let rest = m.complement(&pg);
    let Ok(moved) = d.confinement.transform.mul(m.matrix()) else {
        return false;
    };
    if moved.select_columns(&rest).data() != d.a.data() {
        return false;
    }
    match moved.select_columns(&pg).scale_columns(&d.confinement.scalars) {
        Ok(g) if g.data() == d.g.data() => {}
        _ => return false,
    }
    match &d.outcome {
        Outcome::Hat(c) => c.target == FamilyKind::Hat && verify_certificate(&d.a, &d.g, c),
        Outcome::Bar(c) => c.target == FamilyKind::Bar && verify_certificate(&d.a, &d.g, c),
        Outcome::Bad { cert, minors } => {
            verify_badness(&d.a, &d.g, cert)
                && std::iter::once(&minors.recipe)
                    .chain(minors.after_contracting_z.iter())
                    .all(|r| r.verify(&m).is_ok())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::extension_of_order;
    use crate::geometry::{bar_matrix, obstruction_canonical, pg_matrix_over};

    fn setup(cols: &[Vec<u32>], t: usize) -> (ExtSpec, Mat, Mat) {
        let ext = extension_of_order(2).unwrap();
        let names: Vec<String> = (1..=cols.len()).map(|i| format!("y{i}")).collect();
        let a = Mat::from_columns(&ext.ext, t, cols)
            .unwrap()
            .with_labels(names)
            .unwrap();
        let g = pg_matrix_over(&ext.ext, t, 2).unwrap();
        (ext, a, g)
    }

    #[test]
    fn l_subspace_examples() {
        let ext = extension_of_order(2).unwrap();
        let w = ext.omega();
        assert_eq!(l_subspace(&[1, 0, 0], &ext).unwrap().dim(), 1);
        assert_eq!(l_subspace(&[1, w, 0], &ext).unwrap().dim(), 2);
        assert_eq!(l_subspace(&[0, 0, 0], &ext).unwrap().dim(), 0);
    }

    #[test]
    fn skew_pair_is_strongly_bad() {
        let ext = extension_of_order(2).unwrap();
        let w = ext.omega();
        let (_, a, g) = setup(&[vec![1, w, 0, 0], vec![0, 0, 1, w]], 4);
        let cert = q_badness(&a, &g).unwrap().unwrap();
        assert!(cert.strong);
        assert_eq!(cert.z, vec![0, 1]);
        let minors = o_minor_from_bad(&a, &g, &cert).unwrap();
        assert!(!minors.contraction_clause);
        assert!(minors.after_contracting_z.is_none());
        let (_, a, g) = setup(&[vec![1, w, 0, 0, 0], vec![0, 0, 1, w, 0]], 5);
        let cert = q_badness(&a, &g).unwrap().unwrap();
        let minors = o_minor_from_bad(&a, &g, &cert).unwrap();
        assert!(minors.contraction_clause);
        let r = minors.after_contracting_z.unwrap();
        assert_eq!(r.contract, vec!["y1", "y2"]);
        assert_eq!(r.keep.len(), 10);
    }

    #[test]
    fn canonical_obstruction_needs_a_triple() {
        let o = obstruction_canonical(2).unwrap();
        let d = decide_structure(&o.mat, &(1..=7).map(|i| format!("p{i}")).collect::<Vec<_>>()).unwrap();
        match &d.outcome {
            Outcome::Bad { cert, minors } => {
                assert_eq!(cert.z.len(), 3);
                assert_eq!(minors.recipe.keep.len(), 10);
            }
            other => panic!("expected BAD, got {}", other.token()),
        }
    }

    #[test]
    fn common_point_gives_hat() {
        let ext = extension_of_order(2).unwrap();
        let w = ext.omega();
        let (_, a, g) = setup(&[vec![w, 1, 0], vec![w, 0, 1]], 3);
        assert!(q_badness(&a, &g).unwrap().is_none());
        let cert = embed_certificate(&a, &g).unwrap();
        assert_eq!(cert.target, FamilyKind::Hat);
        let mut bad = cert.clone();
        bad.scalars[0] = ext.ext.mul(bad.scalars[0], w);
        assert!(!verify_certificate(&a, &g, &bad));
    }

    #[test]
    fn empty_and_degenerate_inputs_give_hat() {
        let ext = extension_of_order(2).unwrap();
        let (_, a, g) = setup(&[], 3);
        let cert = embed_certificate(&a, &g).unwrap();
        assert_eq!(cert.target, FamilyKind::Hat);
        let s = ext.compose(1, 1);
        let (_, a, g) = setup(&[vec![s, 0, 0], vec![0, 0, 0]], 3);
        let cert = embed_certificate(&a, &g).unwrap();
        assert_eq!(cert.injection[1], None);
        assert!(cert.injection[0].is_some());
    }

    #[test]
    fn bar_matrix_decides_bar() {
        let b = bar_matrix(3, 2).unwrap();
        let pg: Vec<String> = (1..=7).map(|i| format!("p{i}")).collect();
        let d = decide_structure(&b.mat, &pg).unwrap();
        assert_eq!(d.outcome.token(), "BAR");
        assert!(verify_decision(&b.mat, &pg, &d));
    }
}
