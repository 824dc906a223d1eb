use gfq_regular::algebra::l_subspace;
use gfq_regular::field::{extension_of_order, make_field, ExtSpec, FieldRef};
use gfq_regular::format::{parse_matrix, write_matrix, MatrixFile};
use gfq_regular::geometry::pg_matrix_over;
use gfq_regular::linalg::{Mat, Subspace};
use gfq_regular::matroid::RepMatroid;
use gfq_regular::regularity::{decide_structure, verify_decision};
use proptest::prelude::*;

fn ext(q: u32) -> ExtSpec {
    extension_of_order(q).unwrap()
}

fn field_for(idx: usize) -> FieldRef {
    let (p, k) = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)][idx % 6];
    make_field(p, k).unwrap()
}

fn mat_from(f: &FieldRef, rows: usize, cols: usize, seed: &[u32]) -> Mat {
    let data = (0..rows * cols).map(|i| seed[i % seed.len()] % f.order()).collect();
    Mat::new(f, rows, cols, data).unwrap()
}

/// A unit lower times a unit upper triangular matrix.
fn invertible(f: &FieldRef, n: usize, seed: &[u32]) -> Mat {
    let mut l = Mat::identity(f, n);
    let mut u = Mat::identity(f, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, seed[k % seed.len()] % f.order());
            u.set(j, i, seed[(k + 1) % seed.len()] % f.order());
            k += 2;
        }
    }
    l.mul(&u).unwrap()
}

fn columns(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l_subspace_is_natural(q in prop::sample::select(vec![2u32, 3]),
                             seed in prop::collection::vec(any::<u32>(), 24),
                             w in prop::collection::vec(any::<u32>(), 3),
                             lam in 1u32..16) {
        let e = ext(q);
        let t = invertible(&e.base, 3, &seed);
        let w: Vec<u32> = w.iter().map(|a| a % e.ext.order()).collect();
        let tw = gfq_regular::algebra::embed(&t, &e).unwrap().mul_vec(&w);
        let image = l_subspace(&w, &e).unwrap().image(&t).unwrap();
        prop_assert_eq!(l_subspace(&tw, &e).unwrap(), image);
        let lam = 1 + lam % (e.ext.order() - 1);
        let scaled: Vec<u32> = w.iter().map(|&a| e.ext.mul(a, lam)).collect();
        prop_assert_eq!(l_subspace(&scaled, &e).unwrap(), l_subspace(&w, &e).unwrap());
    }

    #[test]
    fn verdict_ignores_coordinates(cols in prop::collection::vec(prop::collection::vec(0u32..4, 3), 1..4),
                                  seed in prop::collection::vec(any::<u32>(), 9),
                                  scal in prop::collection::vec(1u32..4, 11)) {
        let e = ext(2);
        let f = &e.ext;
        let a = Mat::from_columns(f, 3, &cols).unwrap()
            .with_labels((1..=cols.len()).map(|i| format!("y{i}")).collect()).unwrap();
        let g = pg_matrix_over(f, 3, 2).unwrap();
        let pg = g.labels_or_default();
        let w = a.hstack(&g).unwrap();
        let d = decide_structure(&w, &pg).unwrap();
        prop_assert!(verify_decision(&w, &pg, &d));
        let t = invertible(f, 3, &seed);
        let labels = w.labels_or_default();
        let moved = t.mul(&w.clone().without_labels()).unwrap()
            .scale_columns(&scal[..w.cols()]).unwrap()
            .with_labels(labels).unwrap();
        let d2 = decide_structure(&moved, &pg).unwrap();
        prop_assert!(verify_decision(&moved, &pg, &d2));
        prop_assert_eq!(d.outcome.token(), d2.outcome.token());
    }

    #[test]
    fn matrix_files_round_trip(fi in 0usize..6, rows in 0usize..5, cols in 0usize..7,
                               seed in prop::collection::vec(any::<u32>(), 1..40),
                               labelled in any::<bool>()) {
        let f = field_for(fi);
        let mut m = mat_from(&f, rows, cols, &seed);
        if labelled {
            m = m.with_labels((0..cols).map(|j| format!("c{j}")).collect()).unwrap();
        }
        let file = MatrixFile::new(m);
        let text = write_matrix(&file);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(write_matrix(&back), text);
    }

    #[test]
    fn simplification_keeps_rank_and_points(fi in 0usize..6, rows in 1usize..4, cols in 1usize..9,
                                            seed in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = field_for(fi);
        let m = RepMatroid::new(mat_from(&f, rows, cols, &seed));
        let s = m.simplify();
        prop_assert_eq!(s.rank(), m.rank());
        prop_assert_eq!(s.size(), m.epsilon());
        prop_assert_eq!(s.simplify().size(), s.size());
        for i in 0..s.size() {
            prop_assert!(!s.is_loop(i));
            for j in i + 1..s.size() {
                prop_assert_eq!(s.rank_of(&[i, j]), 2);
            }
        }
    }

    #[test]
    fn connectivity_bounds(fi in 0usize..3, rows in 1usize..4, cols in 2usize..9,
                           seed in prop::collection::vec(any::<u32>(), 1..40),
                           split in any::<u16>()) {
        let f = field_for(fi);
        let m = RepMatroid::new(mat_from(&f, rows, cols, &seed));
        let x: Vec<usize> = (0..cols).filter(|i| split >> i & 1 == 1).collect();
        let y = m.complement(&x);
        let lx = m.lambda(&x);
        prop_assert_eq!(lx, m.lambda(&y));
        prop_assert!(lx <= m.rank_of(&x).min(m.rank_of(&y)));
        if !x.is_empty() && !y.is_empty() {
            let a = &x[..1];
            let b = &y[..1];
            let k = m.kappa(a, b).unwrap();
            prop_assert_eq!(k, m.kappa(b, a).unwrap());
            prop_assert!(k <= lx);
            prop_assert!(k <= m.rank_of(a).min(m.rank_of(b)));
        }
    }

    #[test]
    fn rank_matches_a_spanning_subspace(fi in 0usize..6, rows in 1usize..5, cols in 0usize..6,
                                        seed in prop::collection::vec(any::<u32>(), 1..40)) {
        let f = field_for(fi);
        let m = mat_from(&f, rows, cols, &seed);
        let span = Subspace::span(&f, rows, &columns(&m));
        prop_assert_eq!(span.dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        prop_assert_eq!(m.kernel().dim() + m.rank(), cols);
    }
}
