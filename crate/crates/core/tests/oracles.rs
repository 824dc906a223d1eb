//! Values recomputed by hand-rolled brute force, independent of the library
//! routines under test.

use gfq_regular::field::{extension_of_order, make_field};
use gfq_regular::geometry::{ag_matrix, bar_matrix, hat_matrix, obstruction_enumerate, pg_matrix};
use gfq_regular::linalg::Mat;
use gfq_regular::matroid::RepMatroid;

/// Rank over GF(p) by plain Gaussian elimination on i64.
fn prime_rank(p: i64, rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let k = a[i][c];
                let pivot = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(pivot) {
                    *x = (*x - k * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn ranks_agree_with_plain_elimination() {
    let f = make_field(5, 1).unwrap();
    let rows = vec![
        vec![1, 2, 3, 4, 0],
        vec![2, 4, 1, 3, 0],
        vec![3, 1, 4, 2, 1],
        vec![0, 0, 0, 0, 1],
    ];
    let m = Mat::from_rows(
        &f,
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| x as u32).collect())
            .collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(m.rank(), prime_rank(5, &rows));
    // Row 2 is twice row 1 and row 3 is 3·row 1 + row 4.
    assert_eq!(m.rank(), 2);
}

#[test]
fn gf4_multiplication_table() {
    // x² = x + 1; codes 0, 1, x = 2, x + 1 = 3.
    let f = make_field(2, 2).unwrap();
    let table = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(f.mul(a, b), table[a as usize][b as usize]);
        }
    }
}

#[test]
fn fano_plane_has_seven_lines_of_three() {
    let m = pg_matrix(3, 2).unwrap().matroid();
    let mut lines = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            let mut l = m.closure(&[i, j]);
            l.sort();
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().all(|l| l.len() == 3));
}

#[test]
fn point_counts_by_direct_enumeration() {
    for (n, q) in [(3usize, 3u64), (4, 2), (2, 4)] {
        // Count nonzero vectors of GF(q)^n and divide by the scalars.
        let want = (q.pow(n as u32) - 1) / (q - 1);
        assert_eq!(pg_matrix(n, q as u32).unwrap().matroid().epsilon() as u64, want);
    }
    let ag = ag_matrix(2, 3).unwrap().matroid();
    assert_eq!(ag.size(), 9);
    // Every line of AG(2, 3) has exactly three points.
    for i in 0..9 {
        for j in i + 1..9 {
            assert_eq!(ag.closure(&[i, j]).len(), 3);
        }
    }
}

#[test]
fn hat_and_bar_columns() {
    let hat = hat_matrix(3, 2).unwrap();
    let e = extension_of_order(2).unwrap();
    // Columns with entries 2..n in GF(q) and a first entry outside GF(q),
    // together with the PG(1, q) part: 12 distinct points in total.
    let m = hat.matroid();
    assert_eq!(m.epsilon(), 12);
    let outside = (0..m.size()).filter(|&j| !e.in_subfield(m.column(j)[0])).count();
    assert!(outside > 0);
    let bar = bar_matrix(3, 2).unwrap();
    let bm = bar.matroid();
    assert_eq!(bm.size(), 11);
    assert_eq!(bm.epsilon(), 11);
}

#[test]
fn obstruction_members_are_simple_rank_three() {
    let all = obstruction_enumerate(2).unwrap();
    assert!(!all.is_empty());
    for o in &all {
        let m: RepMatroid = o.matroid();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.epsilon(), 10);
        assert!(o.verify().is_ok());
    }
}
