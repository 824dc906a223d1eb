//! Constructive lemmas relating GF(q) and GF(q²) matrices. Each operation
//! rechecks its own conclusion and reports `Error::Internal` if that fails.

use crate::error::{precondition, Error, Result};
use crate::field::ExtSpec;
use crate::linalg::{normalize, Mat, Subspace};
use crate::matroid::RepMatroid;

/// `L(w) = span_{GF(q)}{u, v}` for `w = u + ωv`.
pub fn l_subspace(w: &[u32], ext: &ExtSpec) -> Result<Subspace> {
    let t = w.len();
    let mut u = Vec::with_capacity(t);
    let mut v = Vec::with_capacity(t);
    for &a in w {
        ext.ext.check(a)?;
        let (x, y) = ext.decompose(a);
        u.push(x);
        v.push(y);
    }
    Ok(Subspace::span(&ext.base, t, &[u, v]))
}

/// Split a matrix over GF(q²) into its `{1, ω}` parts.
pub fn split(m: &Mat, ext: &ExtSpec) -> Result<(Mat, Mat)> {
    if m.field() != &ext.ext {
        return Err(Error::FieldMismatch);
    }
    let u = m.map_entries(&ext.base, |a| ext.decompose(a).0)?;
    let v = m.map_entries(&ext.base, |a| ext.decompose(a).1)?;
    Ok((u, v))
}

/// `A + ωB` as a matrix over GF(q²).
pub fn combine(a: &Mat, b: &Mat, ext: &ExtSpec) -> Result<Mat> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("A and B differ in shape".into()));
    }
    let data: Vec<u32> = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| ext.compose(x, y))
        .collect();
    Mat::new(&ext.ext, a.rows(), a.cols(), data)
}

/// Embed a matrix over GF(q) into GF(q²).
pub fn embed(m: &Mat, ext: &ExtSpec) -> Result<Mat> {
    if m.field() != &ext.base {
        return Err(Error::FieldMismatch);
    }
    m.map_entries(&ext.ext, |a| ext.embed(a))
}

/// Restrict a matrix over GF(q²) with GF(q) entries to the base field.
pub fn to_base(m: &Mat, ext: &ExtSpec) -> Result<Mat> {
    if !m.in_subfield(ext.q()) {
        return Err(Error::NotInSubfield("matrix".into()));
    }
    m.map_entries(&ext.base, |a| a)
}

/// A row transform and column scaling taking a matrix into GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Confinement {
    /// `rank × rows` over the input field.
    pub transform: Mat,
    /// Per-column nonzero scalars.
    pub scalars: Vec<u32>,
    /// `transform · input · diag(scalars)`, every entry in GF(q).
    pub confined: Mat,
}

/// Matrix `R` (rank × rows) with `R·M` equal to the nonzero rows of rref(M).
pub fn row_basis_transform(m: &Mat) -> Result<Mat> {
    let f = m.field().clone();
    let rows = m.rows();
    let aug = m.clone().without_labels().hstack(&Mat::identity(&f, rows))?;
    let r = aug.rref();
    let rank = r.pivots.iter().filter(|&&p| p < m.cols()).count();
    let keep: Vec<usize> = (0..rank).collect();
    let right: Vec<usize> = (m.cols()..m.cols() + rows).collect();
    Ok(r.mat.select_rows(&keep).select_columns(&right).without_labels())
}

/// Frame normalization: the leftmost column basis goes to the standard
/// basis and the first column with all basis coordinates nonzero to the
/// all-ones vector; columns are then normalized. Returns `None` when no
/// frame exists or an entry falls outside GF(q).
pub fn confine_columns(m: &Mat, q: u32) -> Option<Confinement> {
    let f = m.field().clone();
    if !f.has_subfield_of_order(q) {
        return None;
    }
    let rb = row_basis_transform(m).ok()?;
    let g = rb.mul(&m.clone().without_labels()).ok()?;
    let r = g.rref();
    let beta = r.pivots.clone();
    let binv = g.select_columns(&beta).inverse().ok()?;
    let coords = binv.mul(&g).ok()?;
    let c = (0..coords.cols()).find(|&j| (0..coords.rows()).all(|i| coords.get(i, j) != 0))?;
    let n = coords.rows();
    let mut diag = Mat::zeros(&f, n, n);
    for i in 0..n {
        diag.set(i, i, f.inv(coords.get(i, c)));
    }
    let transform = diag.mul(&binv).ok()?.mul(&rb).ok()?;
    let moved = transform.mul(&m.clone().without_labels()).ok()?;
    let scalars: Vec<u32> = (0..moved.cols())
        .map(|j| normalize(&f, &moved.column(j)).map_or(1, |(_, lead)| f.inv(lead)))
        .collect();
    let mut confined = moved.scale_columns(&scalars).ok()?;
    if let Some(l) = m.labels() {
        confined = confined.with_labels(l.to_vec()).ok()?;
    }
    if !confined.in_subfield(q) {
        return None;
    }
    Some(Confinement {
        transform,
        scalars,
        confined,
    })
}

/// Confine a representation of PG(n−1, q) over a field with a GF(q)
/// subfield to a GF(q)-matrix.
pub fn confine_pg(a: &Mat, n: usize, q: u32) -> Result<Confinement> {
    if n < 3 {
        return precondition("confinement needs n ≥ 3");
    }
    if !a.field().has_subfield_of_order(q) {
        return Err(Error::FieldMismatch);
    }
    let m = RepMatroid::new(a.clone());
    if m.rank() != n || m.epsilon() as u64 != ((q as u64).pow(n as u32) - 1) / (q as u64 - 1) {
        return precondition(format!("input does not represent PG({}, {q})", n - 1));
    }
    let Some(c) = confine_columns(a, q) else {
        return precondition(format!("input does not represent PG({}, {q})", n - 1));
    };
    // Recheck: entries in GF(q), T·A·D reproduced, and the result is PG.
    let recomputed = c
        .transform
        .mul(&a.clone().without_labels())?
        .scale_columns(&c.scalars)?;
    if recomputed.data() != c.confined.data() || !c.confined.in_subfield(q) {
        return Err(Error::Internal("confinement recheck failed".into()));
    }
    if RepMatroid::new(c.confined.clone()).epsilon() != m.epsilon() {
        return Err(Error::Internal("confinement changed the point count".into()));
    }
    Ok(c)
}

/// A nonzero GF(q)-vector in `U ∩ V`, where `V ⊆ GF(q)^t` has dimension h,
/// `U ⊆ span_F(V)` has dimension j over F and `2j > h`.
pub fn subfield_vector_in_span(v: &Subspace, u: &Subspace, ext: &ExtSpec) -> Result<Vec<u32>> {
    if v.field() != &ext.base || u.field() != &ext.ext {
        return Err(Error::FieldMismatch);
    }
    if v.ambient() != u.ambient() {
        return Err(Error::DimensionMismatch("ambient dimensions differ".into()));
    }
    let (h, j) = (v.dim(), u.dim());
    if 2 * j <= h {
        return precondition(format!("need 2j > h, got j = {j}, h = {h}"));
    }
    let f = &ext.ext;
    let vb = v.vectors();
    let pivots: Vec<usize> = vb.iter().map(|r| r.iter().position(|&a| a != 0).unwrap()).collect();
    // φ(Σ(λᵢ + ωμᵢ)bᵢ) = (λ, μ), applied to an F₀-spanning set {u, ωu}.
    let w = ext.omega();
    let mut lam_rows = Vec::new();
    let mut mu_rows = Vec::new();
    for x in u.vectors() {
        for scaled in [x.clone(), x.iter().map(|&a| f.mul(w, a)).collect::<Vec<u32>>()] {
            let coeffs: Vec<u32> = pivots.iter().map(|&p| scaled[p]).collect();
            // Reconstruct to confirm membership in span_F(V).
            let mut back = vec![0u32; v.ambient()];
            for (c, b) in coeffs.iter().zip(&vb) {
                for (slot, &bi) in back.iter_mut().zip(b) {
                    *slot = f.add(*slot, f.mul(*c, bi));
                }
            }
            if back != scaled {
                return precondition("U is not contained in span_F(V)");
            }
            lam_rows.push(coeffs.iter().map(|&c| ext.decompose(c).0).collect::<Vec<u32>>());
            mu_rows.push(coeffs.iter().map(|&c| ext.decompose(c).1).collect::<Vec<u32>>());
        }
    }
    let mu = Mat::from_rows(&ext.base, &mu_rows)?;
    let kernel = mu.left_kernel();
    let y = kernel
        .vectors()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Internal("no kernel vector despite 2j > h".into()))?;
    let base = &ext.base;
    let mut lambda = vec![0u32; h];
    for (yk, row) in y.iter().zip(&lam_rows) {
        for (slot, &l) in lambda.iter_mut().zip(row) {
            *slot = base.add(*slot, base.mul(*yk, l));
        }
    }
    let mut out = vec![0u32; v.ambient()];
    for (c, b) in lambda.iter().zip(&vb) {
        for (slot, &bi) in out.iter_mut().zip(b) {
            *slot = base.add(*slot, base.mul(*c, bi));
        }
    }
    if out.iter().all(|&a| a == 0) || !v.contains_vector(&out) || !u.contains_vector(&out) {
        return Err(Error::Internal("subfield vector recheck failed".into()));
    }
    Ok(out)
}

/// Rank-h `Q ∈ F^{h×d}` with `Q(A + ωB)` over GF(q), built as
/// `(ω − t)Q₁ + Q₂` from the left kernel `(Q₁ | Q₂)` of `(A; B)`.
pub fn realify_rows(a: &Mat, b: &Mat, h: usize, ext: &ExtSpec) -> Result<Mat> {
    if a.field() != &ext.base || b.field() != &ext.base {
        return Err(Error::FieldMismatch);
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch("A and B differ in shape".into()));
    }
    let d = a.rows();
    if h > d {
        return precondition(format!("h = {h} exceeds d = {d}"));
    }
    let ab = combine(a, b, ext)?;
    if ab.rank() != d {
        return precondition("A + ωB must have full row rank");
    }
    let stacked = a.clone().without_labels().vstack(&b.clone().without_labels())?;
    if stacked.rank() != 2 * d - h {
        return precondition(format!("rank of (A; B) must be 2d − h = {}", 2 * d - h));
    }
    let f = &ext.ext;
    let kernel = stacked.left_kernel();
    let w_minus_t = f.sub(ext.omega(), ext.t);
    let mut rows = Vec::with_capacity(h);
    for k in kernel.vectors() {
        let (q1, q2) = k.split_at(d);
        rows.push(
            q1.iter()
                .zip(q2)
                .map(|(&x, &y)| f.add(f.mul(w_minus_t, x), y))
                .collect::<Vec<u32>>(),
        );
    }
    let q = if rows.is_empty() {
        Mat::zeros(f, 0, d)
    } else {
        Mat::from_rows(f, &rows)?
    };
    let prod = q.mul(&ab)?;
    if q.rank() != h || q.rows() != h || !prod.in_subfield(ext.q()) {
        return Err(Error::Internal("realified rows recheck failed".into()));
    }
    Ok(q)
}

/// Row-equivalent `(A′ + ωB′; P)` with at least h zero rows (first) in B′.
pub fn zero_rows_normalize(a: &Mat, b: &Mat, p: &Mat, h: usize, ext: &ExtSpec) -> Result<(Mat, Mat)> {
    let base = &ext.base;
    let f = &ext.ext;
    for m in [a, b, p] {
        if m.field() != base {
            return Err(Error::FieldMismatch);
        }
    }
    let (d, n, m) = (a.rows(), a.cols(), p.rows());
    if b.rows() != d || b.cols() != n || p.cols() != n {
        return Err(Error::DimensionMismatch("A, B, P must share columns".into()));
    }
    if h > d {
        return precondition(format!("h = {h} exceeds d = {d}"));
    }
    let ab = combine(a, b, ext)?;
    let pe = embed(p, ext)?;
    let top = ab.vstack(&pe)?;
    if top.rank() != m + d {
        return precondition("rank of (A + ωB; P) must be m + d");
    }
    if p.rank() != m {
        return precondition("P must have full row rank");
    }
    let abp = a.vstack(b)?.vstack(p)?;
    if abp.rank() + h > m + 2 * d {
        return precondition("rank of (A; B; P) exceeds m + 2d − h");
    }
    if h == 0 {
        return Ok((a.clone(), b.clone()));
    }
    // Work modulo the row space of P.
    let kvecs = p.kernel().vectors();
    let kmat = if kvecs.is_empty() {
        Mat::zeros(base, n, 0)
    } else {
        Mat::from_columns(base, n, &kvecs)?
    };
    let at = a.mul(&kmat)?;
    let bt = b.mul(&kmat)?;
    let h2 = 2 * d - at.vstack(&bt)?.rank();
    let q = realify_rows(&at, &bt, h2, ext)?;
    let x = q.mul(&ab)?;
    let (x0, x1) = split(&x, ext)?;
    // X₁ lies in the row space of P: X₁ = Y·P.
    let pr = p.rref();
    let pinv = p.select_columns(&pr.pivots).inverse()?;
    let y = x1.select_columns(&pr.pivots).mul(&pinv)?;
    if y.mul(p)?.data() != x1.data() {
        return Err(Error::Internal("ω-part escaped the row space of P".into()));
    }
    // Complete Q to an invertible d×d transform with standard rows.
    let mut rows: Vec<Vec<u32>> = (0..h2).map(|i| q.row(i).to_vec()).collect();
    let mut extra = Vec::new();
    for i in 0..d {
        if rows.len() == d {
            break;
        }
        let mut e = vec![0u32; d];
        e[i] = 1;
        rows.push(e);
        if Mat::from_rows(f, &rows)?.rank() == rows.len() {
            extra.push(i);
        } else {
            rows.pop();
        }
    }
    let mut new_a = x0.without_labels();
    let mut new_b = Mat::zeros(base, h2, n);
    let (ua, ub) = (a.clone().without_labels(), b.clone().without_labels());
    for &i in &extra {
        new_a = new_a.vstack(&ua.select_rows(&[i]))?;
        new_b = new_b.vstack(&ub.select_rows(&[i]))?;
    }
    // Recheck: equal row spaces and the zero rows.
    let before = Subspace::row_space(&top);
    let after = Subspace::row_space(&combine(&new_a, &new_b, ext)?.vstack(&pe)?);
    let zero_rows = (0..new_b.rows())
        .take_while(|&i| new_b.row(i).iter().all(|&c| c == 0))
        .count();
    if before != after || zero_rows < h || new_a.rows() != d {
        return Err(Error::Internal("zero-row normalization recheck failed".into()));
    }
    Ok((new_a, new_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::extension_of_order;
    use crate::geometry::pg_matrix_over;

    #[test]
    fn l_subspace_examples() {
        let e = extension_of_order(2).unwrap();
        let w = e.omega();
        assert_eq!(l_subspace(&[1, 0, 0], &e).unwrap().dim(), 1);
        let l = l_subspace(&[1, w, 0], &e).unwrap();
        assert_eq!(l, Subspace::span(&e.base, 3, &[vec![1, 0, 0], vec![0, 1, 0]]));
        assert_eq!(l_subspace(&[0, 0, 0], &e).unwrap().dim(), 0);
    }

    #[test]
    fn confine_scaled_plane() {
        let e = extension_of_order(2).unwrap();
        let g = pg_matrix_over(&e.ext, 3, 2).unwrap();
        let c = confine_pg(&g, 3, 2).unwrap();
        assert!(c.confined.in_subfield(2));
        let w = e.omega();
        let scaled = g.scale_columns(&[w; 7]).unwrap();
        let c = confine_pg(&scaled, 3, 2).unwrap();
        assert!(c.confined.in_subfield(2));
    }

    #[test]
    fn subfield_vector_example() {
        let e = extension_of_order(2).unwrap();
        let w = e.omega();
        let v = Subspace::full(&e.base, 3);
        let u = Subspace::span(&e.ext, 3, &[vec![1, w, 0], vec![0, 1, w]]);
        assert_eq!(subfield_vector_in_span(&v, &u, &e).unwrap(), vec![1, 1, 1]);
        let small = Subspace::span(&e.ext, 3, &[vec![1, w, 0]]);
        assert!(matches!(
            subfield_vector_in_span(&v, &small, &e),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn realify_example() {
        let e = extension_of_order(2).unwrap();
        let a = Mat::from_rows(&e.base, &[vec![1, 1]]).unwrap();
        let q = realify_rows(&a, &a, 1, &e).unwrap();
        assert_eq!(q.data(), &[e.omega()]);
        let prod = q.mul(&combine(&a, &a, &e).unwrap()).unwrap();
        assert_eq!(prod.data(), &[1, 1]);
        let b = Mat::from_rows(&e.base, &[vec![0, 1]]).unwrap();
        let z = realify_rows(&a, &b, 0, &e).unwrap();
        assert_eq!(z.rows(), 0);
    }

    #[test]
    fn zero_rows_examples() {
        let e = extension_of_order(3).unwrap();
        let a = Mat::from_rows(&e.base, &[vec![1, 0, 0, 1], vec![0, 1, 0, 0]]).unwrap();
        let b = Mat::zeros(&e.base, 2, 4);
        let p = Mat::from_rows(&e.base, &[vec![0, 0, 1, 0]]).unwrap();
        let (a2, b2) = zero_rows_normalize(&a, &b, &p, 2, &e).unwrap();
        assert_eq!(Subspace::row_space(&a2), Subspace::row_space(&a));
        assert!(b2.is_zero());
        let bb = Mat::from_rows(&e.base, &[vec![0, 1, 0, 0], vec![0, 0, 0, 1]]).unwrap();
        let (a3, b3) = zero_rows_normalize(&a, &bb, &p, 0, &e).unwrap();
        assert_eq!((a3, b3), (a.clone(), bb));
    }
}
