//! Desk-scale verification suite. Each check recomputes its claim from the
//! library's generators and deciders and reports pass/fail with a detail
//! line and its running time against a budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{combine, confine_pg, embed, realify_rows, subfield_vector_in_span, zero_rows_normalize};
use crate::field::{extension_of_order, field_of_order, make_field, ExtSpec, FieldRef};
use crate::geometry::{
    abstract_hat, ag_matrix, bar_matrix, clique_matrix, hat_matrix, hat_target, obstruction_canonical, pg_matrix,
    pg_matrix_over,
};
use crate::linalg::{normalize, projective_isomorphism, Mat, Subspace};
use crate::matroid::{same_restriction, RepMatroid};
use crate::regularity::{decide_structure, verify_decision, Outcome};
use crate::representability::representability_profile;
use crate::tangle::{induced_tangle, is_tangle, t_k_sets, t_k_tangle, tangle_matroid_check, MinorRecipe};

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    /// Fewer random instances per check.
    pub quick: bool,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            quick: false,
            seed: 2024,
        }
    }
}

impl SuiteOptions {
    fn instances(&self, full: usize) -> usize {
        if self.quick {
            (full / 10).max(1)
        } else {
            full
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

type Outcome_ = std::result::Result<String, String>;

pub const CHECKS: [(&str, u64); 8] = [
    ("field axioms", 5),
    ("generator counts", 5),
    ("obstruction representability", 60),
    ("structure trichotomy", 120),
    ("subfield algebra", 60),
    ("tangles", 120),
    ("connectivity", 120),
    ("cyclic flats and the hat construction", 30),
];

pub fn run_check(id: usize, opts: &SuiteOptions) -> Check {
    let (name, secs) = CHECKS[id - 1];
    let start = Instant::now();
    let result = match id {
        1 => field_axioms(),
        2 => generator_counts(),
        3 => obstruction_fields(),
        4 => trichotomy(opts),
        5 => subfield_algebra(opts),
        6 => tangles(),
        7 => connectivity(opts),
        _ => cyclic_flats_and_hat(),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(secs);
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if elapsed > budget {
        passed = false;
        detail = format!("over time budget; {detail}");
    }
    Check {
        id,
        name,
        passed,
        detail,
        elapsed,
        budget,
    }
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<Check> {
    (1..=CHECKS.len()).map(|i| run_check(i, opts)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field_axioms() -> Outcome_ {
    let mut fields: Vec<(String, FieldRef)> = Vec::new();
    for (p, k) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
        fields.push((format!("GF({p}^{k})"), make_field(p, k).map_err(|e| e.to_string())?));
    }
    for q in [2, 3, 4] {
        fields.push((
            format!("GF({q})(ω)"),
            extension_of_order(q).map_err(|e| e.to_string())?.ext,
        ));
    }
    for (name, f) in &fields {
        let n = f.order();
        for a in 0..n {
            ensure(f.add(a, 0) == a && f.mul(a, 1) == a, || {
                format!("{name}: identity fails at {a}")
            })?;
            ensure(f.add(a, f.neg(a)) == 0, || {
                format!("{name}: additive inverse fails at {a}")
            })?;
            if a != 0 {
                ensure(f.mul(a, f.inv(a)) == 1, || format!("{name}: inverse fails at {a}"))?;
            }
            for b in 0..n {
                ensure(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), || {
                    format!("{name}: commutativity fails at {a}, {b}")
                })?;
                for c in 0..n {
                    ensure(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), || {
                        format!("{name}: additive associativity fails")
                    })?;
                    ensure(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), || {
                        format!("{name}: multiplicative associativity fails")
                    })?;
                    ensure(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), || {
                        format!("{name}: distributivity fails")
                    })?;
                }
            }
        }
    }
    Ok(format!("{} fields checked exhaustively", fields.len()))
}

fn generator_counts() -> Outcome_ {
    let e = |x: crate::Error| x.to_string();
    let mut checked = 0;
    for q in [2u32, 3, 4] {
        for n in 1..=5usize {
            let m = pg_matrix(n, q).map_err(e)?.matroid();
            let want = ((q as u64).pow(n as u32) - 1) / (q as u64 - 1);
            ensure(
                m.epsilon() as u64 == want && m.size() as u64 == want && m.rank() == n,
                || format!("PG({}, {q}) has {} points, expected {want}", n - 1, m.epsilon()),
            )?;
            checked += 1;
        }
    }
    for q in [2u32, 3] {
        for h in 1..=3usize {
            let m = ag_matrix(h, q).map_err(e)?.matroid();
            let want = (q as u64).pow(h as u32);
            ensure(m.epsilon() as u64 == want && m.rank() == h + 1, || {
                format!("AG({h}, {q}) has {} points, expected {want}", m.epsilon())
            })?;
            checked += 1;
        }
    }
    let hat = hat_matrix(3, 2).map_err(e)?.matroid();
    ensure(hat.size() == 12 && hat.epsilon() == 12, || {
        format!(
            "hat matrix (n = 3, q = 2) has {} columns, {} points",
            hat.size(),
            hat.epsilon()
        )
    })?;
    let bar = bar_matrix(3, 2).map_err(e)?;
    let bm = bar.matroid();
    ensure(bar.x.len() == 4, || format!("|X| = {}, expected 4", bar.x.len()))?;
    let f = bar.role("f").ok_or("bar matrix has no f")?.to_string();
    let mut line_labels = bar.x.clone();
    line_labels.push(f);
    let line = bm.indices(&line_labels).map_err(e)?;
    let closure = bm.closure(&line);
    ensure(
        bm.rank_of(&line) == 2 && closure == line && bm.restrict(&line).epsilon() == 5,
        || "X ∪ {f} is not a 5-point line".into(),
    )?;
    Ok(format!(
        "{checked} PG/AG counts match the formulas; hat has 12 points; bar has |X| = 4 on a 5-point line"
    ))
}

fn obstruction_fields() -> Outcome_ {
    let o = obstruction_canonical(2).map_err(|e| e.to_string())?.matroid();
    let orders = [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16];
    let fields: Vec<FieldRef> = orders
        .iter()
        .map(|&q| field_of_order(q))
        .collect::<crate::Result<_>>()
        .map_err(|e| e.to_string())?;
    let profile = representability_profile(&o, &fields).map_err(|e| e.to_string())?;
    let accepted: Vec<u32> = profile
        .iter()
        .filter(|(_, w)| w.is_some())
        .map(|(f, _)| f.order())
        .collect();
    let with_subfield: Vec<u32> = orders.iter().copied().filter(|&q| q == 4 || q == 16).collect();
    ensure(accepted == with_subfield, || {
        format!("representable over {accepted:?}, expected {with_subfield:?}")
    })?;
    Ok(format!("representable exactly over GF(q) for q in {accepted:?}"))
}

/// Columns up to scaling: zero plus the normalized points.
fn scaled_columns(f: &FieldRef, t: usize) -> Vec<Vec<u32>> {
    let q = f.order() as u64;
    let mut out = vec![vec![0u32; t]];
    for code in 1..q.pow(t as u32) {
        let v: Vec<u32> = (0..t)
            .map(|i| ((code / q.pow((t - 1 - i) as u32)) % q) as u32)
            .collect();
        if normalize(f, &v).map(|(n, _)| n == v).unwrap_or(false) {
            out.push(v);
        }
    }
    out
}

#[derive(Default)]
struct Tally {
    hat: usize,
    bar: usize,
    bad: usize,
}

fn decide_one(ext: &ExtSpec, cols: &[Vec<u32>], t: usize, tally: &mut Tally) -> std::result::Result<(), String> {
    let f = &ext.ext;
    let a = Mat::from_columns(f, t, cols)
        .and_then(|m| m.with_labels((1..=cols.len()).map(|i| format!("y{i}")).collect()))
        .map_err(|e| e.to_string())?;
    let g = pg_matrix_over(f, t, ext.q()).map_err(|e| e.to_string())?;
    let pg = g.labels_or_default();
    let w = a.hstack(&g).map_err(|e| e.to_string())?;
    let d = decide_structure(&w, &pg).map_err(|e| format!("{cols:?}: {e}"))?;
    ensure(verify_decision(&w, &pg, &d), || {
        format!("{cols:?}: decision fails verification")
    })?;
    match d.outcome {
        Outcome::Hat(_) => tally.hat += 1,
        Outcome::Bar(_) => tally.bar += 1,
        Outcome::Bad { .. } => tally.bad += 1,
    }
    Ok(())
}

fn trichotomy(opts: &SuiteOptions) -> Outcome_ {
    let ext = extension_of_order(2).map_err(|e| e.to_string())?;
    let f = ext.ext.clone();
    let pool = scaled_columns(&f, 3);
    let mut tally = Tally::default();
    let mut count = 0;
    decide_one(&ext, &[], 3, &mut tally)?;
    count += 1;
    for i in 0..pool.len() {
        for j in i..pool.len() {
            decide_one(&ext, &[pool[i].clone(), pool[j].clone()], 3, &mut tally)?;
            for k in j..pool.len() {
                decide_one(
                    &ext,
                    &[pool[i].clone(), pool[j].clone(), pool[k].clone()],
                    3,
                    &mut tally,
                )?;
                count += 1;
            }
            count += 1;
        }
        decide_one(&ext, &[pool[i].clone()], 3, &mut tally)?;
        count += 1;
    }
    let exhaustive = format!(
        "{count} exhaustive (t = 3, |Y| ≤ 3 up to column scaling and order): {} HAT, {} BAR, {} BAD",
        tally.hat, tally.bar, tally.bad
    );
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut random = Tally::default();
    let n = opts.instances(1000);
    for _ in 0..n {
        let cols: Vec<Vec<u32>> = (0..3)
            .map(|_| (0..4).map(|_| rng.gen_range(0..f.order())).collect())
            .collect();
        decide_one(&ext, &cols, 4, &mut random)?;
    }
    Ok(format!(
        "{exhaustive}; {n} random (t = 4, |Y| = 3): {} HAT, {} BAR, {} BAD; all verified",
        random.hat, random.bar, random.bad
    ))
}

fn random_mat(rng: &mut ChaCha8Rng, f: &FieldRef, rows: usize, cols: usize) -> Mat {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.order())).collect();
    Mat::new(f, rows, cols, data).expect("entries in range")
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &FieldRef, n: usize) -> Mat {
    loop {
        let m = random_mat(rng, f, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// `(A, B)` with `rank(A + ωB) = d` and `B` partly in the row space of `A`.
fn random_pair(rng: &mut ChaCha8Rng, ext: &ExtSpec, d: usize, n: usize, extra: Option<&Mat>) -> (Mat, Mat) {
    let base = &ext.base;
    loop {
        let a = random_mat(rng, base, d, n);
        let keep = rng.gen_range(0..=d);
        let noise = random_mat(rng, base, keep, d);
        let d_part = if keep == 0 {
            Mat::zeros(base, d, n)
        } else {
            random_mat(rng, base, d, keep)
                .mul(&noise.mul(&random_mat(rng, base, d, n)).unwrap())
                .unwrap()
        };
        let mut b = random_mat(rng, base, d, d).mul(&a).unwrap();
        b = add(&b, &d_part);
        if let Some(p) = extra {
            b = add(&b, &random_mat(rng, base, d, p.rows()).mul(p).unwrap());
        }
        let full = match extra {
            Some(p) => {
                combine(&a, &b, ext)
                    .unwrap()
                    .vstack(&embed(p, ext).unwrap())
                    .unwrap()
                    .rank()
                    == d + p.rows()
            }
            None => combine(&a, &b, ext).unwrap().rank() == d,
        };
        if full {
            return (a, b);
        }
    }
}

fn add(x: &Mat, y: &Mat) -> Mat {
    let f = x.field();
    let data = x.data().iter().zip(y.data()).map(|(&a, &b)| f.add(a, b)).collect();
    Mat::new(f, x.rows(), x.cols(), data).unwrap()
}

fn subfield_algebra(opts: &SuiteOptions) -> Outcome_ {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 5);
    let n_inst = opts.instances(1000);
    let exts: Vec<ExtSpec> = [2u32, 3]
        .iter()
        .map(|&q| extension_of_order(q))
        .collect::<crate::Result<_>>()
        .map_err(|e| e.to_string())?;
    let err = |what: &str, e: crate::Error| format!("{what}: {e}");
    let mut hs = BTreeSet::new();
    for i in 0..n_inst {
        let ext = &exts[i % 2];
        let d = rng.gen_range(1..=4);
        let n = rng.gen_range(d..=2 * d + 1);
        let (a, b) = random_pair(&mut rng, ext, d, n, None);
        let h = 2 * d - a.vstack(&b).unwrap().rank();
        hs.insert(h);
        let q = realify_rows(&a, &b, h, ext).map_err(|e| err("realify_rows", e))?;
        let prod = q.mul(&combine(&a, &b, ext).unwrap()).unwrap();
        ensure(q.rows() == h && q.rank() == h && prod.in_subfield(ext.q()), || {
            format!("realify_rows output fails on instance {i}")
        })?;
    }
    for i in 0..n_inst {
        let ext = &exts[i % 2];
        let base = &ext.base;
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=2);
        let n = rng.gen_range(d + m..=2 * d + m + 1);
        let p = loop {
            let p = random_mat(&mut rng, base, m, n);
            if p.rank() == m {
                break p;
            }
        };
        let (a, b) = random_pair(&mut rng, ext, d, n, Some(&p));
        let r = a.vstack(&b).unwrap().vstack(&p).unwrap().rank();
        let h = (m + 2 * d - r).min(d);
        let (a2, b2) = zero_rows_normalize(&a, &b, &p, h, ext).map_err(|e| err("zero_rows_normalize", e))?;
        let pe = embed(&p, ext).unwrap();
        let before = Subspace::row_space(&combine(&a, &b, ext).unwrap().vstack(&pe).unwrap());
        let after = Subspace::row_space(&combine(&a2, &b2, ext).unwrap().vstack(&pe).unwrap());
        let zero = (0..b2.rows()).filter(|&r| b2.row(r).iter().all(|&c| c == 0)).count();
        ensure(before == after && zero >= h && a2.rows() == d, || {
            format!("zero_rows_normalize output fails on instance {i}")
        })?;
    }
    for i in 0..n_inst {
        let ext = &exts[i % 2];
        let t = rng.gen_range(1..=4);
        let h = rng.gen_range(1..=t);
        let j = rng.gen_range(h / 2 + 1..=h);
        let v = loop {
            let s = Subspace::row_space(&random_mat(&mut rng, &ext.base, h, t));
            if s.dim() == h {
                break s;
            }
        };
        let vb = embed(v.basis(), ext).unwrap();
        let u = loop {
            let s = Subspace::row_space(&random_mat(&mut rng, &ext.ext, j, h).mul(&vb).unwrap());
            if s.dim() == j {
                break s;
            }
        };
        let x = subfield_vector_in_span(&v, &u, ext).map_err(|e| err("subfield_vector_in_span", e))?;
        let xe: Vec<u32> = x.iter().map(|&c| ext.embed(c)).collect();
        let in_v = Mat::from_rows(&ext.base, &[v.vectors(), vec![x.clone()]].concat())
            .unwrap()
            .rank()
            == h;
        let in_u = Mat::from_rows(&ext.ext, &[u.vectors(), vec![xe]].concat())
            .unwrap()
            .rank()
            == j;
        ensure(x.iter().any(|&c| c != 0) && in_v && in_u, || {
            format!("subfield_vector_in_span output fails on instance {i}")
        })?;
    }
    let fields: Vec<(u32, FieldRef)> = vec![
        (2, exts[0].ext.clone()),
        (3, exts[1].ext.clone()),
        (2, make_field(2, 3).map_err(|e| e.to_string())?),
    ];
    for i in 0..n_inst {
        let (q, f) = &fields[i % fields.len()];
        let n = rng.gen_range(3..=4);
        let g = pg_matrix_over(f, n, *q).map_err(|e| e.to_string())?;
        let t = random_invertible(&mut rng, f, n);
        let scal: Vec<u32> = (0..g.cols()).map(|_| rng.gen_range(1..f.order())).collect();
        let mut perm: Vec<usize> = (0..g.cols()).collect();
        for k in (1..perm.len()).rev() {
            perm.swap(k, rng.gen_range(0..=k));
        }
        let moved = t.mul(&g).unwrap().scale_columns(&scal).unwrap().select_columns(&perm);
        let c = confine_pg(&moved, n, *q).map_err(|e| err("confine_pg", e))?;
        let replay = c
            .transform
            .mul(&moved.clone().without_labels())
            .unwrap()
            .scale_columns(&c.scalars)
            .unwrap();
        let is_pg = RepMatroid::new(c.confined.clone()).is_pg(n, *q).unwrap_or(false);
        ensure(
            replay.data() == c.confined.data() && c.confined.in_subfield(*q) && is_pg,
            || format!("confine_pg output fails on instance {i}"),
        )?;
    }
    Ok(format!(
        "4 × {n_inst} random instances rechecked (zero-row counts h seen by realify_rows: {hs:?})"
    ))
}

fn tangles() -> Outcome_ {
    let e = |x: crate::Error| x.to_string();
    for (n, q) in [(3usize, 2u32), (4, 2), (3, 3)] {
        let m = pg_matrix(n, q).map_err(e)?.matroid();
        let t = t_k_tangle(&m, n).map_err(e)?;
        if let Some(v) = is_tangle(&t).map_err(e)? {
            return Err(format!("T_{n}(PG({}, {q})) violates {}", n - 1, v.axiom));
        }
        let sets = t_k_sets(&m, n).map_err(e)?;
        let table = m.element_rank_table().map_err(e)?;
        let low: Vec<usize> = (0..=table.full_mask()).filter(|&x| table.rank(x) + 2 <= n).collect();
        ensure(sets == low, || {
            format!("T_{n}(PG({}, {q})) is not the rank ≤ {} family", n - 1, n - 2)
        })?;
    }
    let fano = t_k_tangle(&pg_matrix(3, 2).map_err(e)?.matroid(), 3).map_err(e)?;
    ensure(tangle_matroid_check(&fano).map_err(e)?, || {
        "κ_T on the Fano plane is not a rank-2 matroid".into()
    })?;
    let m = pg_matrix(4, 2).map_err(e)?.matroid();
    let p = m.index_of("p1").map_err(e)?;
    let contracted = m.minor(&[], &[p], false).map_err(e)?;
    let keep = contracted.simple_representatives();
    let n = contracted.restrict(&keep);
    ensure(n.is_pg(3, 2).map_err(e)?, || "contraction did not give PG(2, 2)".into())?;
    let mut delete: Vec<String> = contracted.labels_of(&contracted.complement(&keep));
    delete.sort();
    let recipe = MinorRecipe {
        delete,
        contract: vec!["p1".into()],
    };
    let base = t_k_tangle(&n, 3).map_err(e)?;
    let ind = induced_tangle(&m, &recipe, &base).map_err(e)?;
    if let Some(v) = is_tangle(&ind).map_err(e)? {
        return Err(format!("induced tangle on PG(3, 2) violates {}", v.axiom));
    }
    ensure(tangle_matroid_check(&ind).map_err(e)?, || {
        "induced κ_T is not a rank-2 matroid".into()
    })?;
    let small = ind.small_sets();
    let nset: Vec<usize> = (0..m.size()).filter(|&i| n.index_of(m.label(i)).is_ok()).collect();
    for &x in &small {
        let inside: Vec<String> = nset
            .iter()
            .filter(|&&i| x & (1 << i) != 0)
            .map(|&i| m.label(i).to_string())
            .collect();
        let mask = base.host.mask(&inside).map_err(e)?;
        ensure(base.is_small(mask), || {
            "an induced small set meets E(N) in a large set".into()
        })?;
    }
    Ok(format!(
        "T_n(PG(n−1, q)) is a tangle for (3,2), (4,2), (3,3); κ_T rank-2 on the Fano plane; induced tangle on PG(3, 2) has {} small sets and passes",
        small.len()
    ))
}

fn brute_kappa(m: &RepMatroid, a: &[usize], b: &[usize]) -> usize {
    let n = m.size();
    let free: Vec<usize> = (0..n).filter(|i| !a.contains(i) && !b.contains(i)).collect();
    let mut best = usize::MAX;
    for mask in 0..1usize << free.len() {
        let mut z: Vec<usize> = a.to_vec();
        z.extend(
            free.iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &i)| i),
        );
        let rest: Vec<usize> = (0..n).filter(|i| !z.contains(i)).collect();
        best = best.min(m.rank_of(&z) + m.rank_of(&rest) - m.rank());
    }
    best
}

fn connectivity(opts: &SuiteOptions) -> Outcome_ {
    let e = |x: crate::Error| x.to_string();
    let mut round = Vec::new();
    for q in [2u32, 3] {
        for n in 1..=4usize {
            round.push((format!("PG({}, {q})", n - 1), pg_matrix(n, q).map_err(e)?.matroid()));
        }
    }
    round.push(("M(K5)".into(), RepMatroid::new(clique_matrix(5).map_err(e)?)));
    round.push(("AG(2, 3)".into(), ag_matrix(2, 3).map_err(e)?.matroid()));
    for (name, m) in &round {
        ensure(m.is_round().map_err(e)?.0, || format!("{name} is not round"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 7);
    let fields = [field_of_order(2).map_err(e)?, field_of_order(3).map_err(e)?];
    let n_inst = opts.instances(200);
    for i in 0..n_inst {
        let f = &fields[i % 2];
        let rows = rng.gen_range(2..=4);
        let cols = rng.gen_range(4..=9);
        let m = RepMatroid::new(random_mat(&mut rng, f, rows, cols));
        let mut idx: Vec<usize> = (0..cols).collect();
        for k in (1..cols).rev() {
            idx.swap(k, rng.gen_range(0..=k));
        }
        let na = rng.gen_range(1..=cols / 2);
        let nb = rng.gen_range(1..=cols - na);
        let mut a = idx[..na].to_vec();
        let mut b = idx[na..na + nb].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        let k = m.kappa(&a, &b).map_err(e)?;
        let want = brute_kappa(&m, &a, &b);
        ensure(k == want, || format!("instance {i}: κ = {k}, brute force {want}"))?;
        let n = m.linking_minor(&a, &b).map_err(e)?;
        let mut ground: Vec<String> = m.labels_of(&a);
        ground.extend(m.labels_of(&b));
        let mut nl = n.labels().to_vec();
        nl.sort();
        ground.sort();
        ensure(nl == ground, || {
            format!("instance {i}: linking minor has the wrong ground set")
        })?;
        let na_idx: Vec<usize> = m.labels_of(&a).iter().map(|l| n.index_of(l).unwrap()).collect();
        let nb_idx: Vec<usize> = m.labels_of(&b).iter().map(|l| n.index_of(l).unwrap()).collect();
        ensure(
            same_restriction(&m, &a, &n, &na_idx) && same_restriction(&m, &b, &n, &nb_idx),
            || format!("instance {i}: linking minor changes a restriction"),
        )?;
        ensure(n.lambda(&na_idx) == k, || format!("instance {i}: λ_N(A) ≠ κ"))?;
    }
    Ok(format!(
        "{} geometries round; κ and linking minors agree with brute force on {n_inst} instances",
        round.len()
    ))
}

fn cyclic_flats_and_hat() -> Outcome_ {
    let e = |x: crate::Error| x.to_string();
    let bar = bar_matrix(3, 2).map_err(e)?;
    let m = bar.matroid();
    let x: Vec<usize> = m.indices(&bar.x).map_err(e)?;
    let n_idx = m.complement(&x);
    let n = m.restrict(&n_idx);
    let lab = |ms: &RepMatroid, s: &[usize]| -> BTreeSet<String> { ms.labels_of(s).into_iter().collect() };
    let actual: BTreeSet<BTreeSet<String>> = m.cyclic_flats().map_err(e)?.iter().map(|s| lab(&m, s)).collect();
    let f = bar.role("f").ok_or("bar matrix has no f")?.to_string();
    let x_l0 = bar.role("x_L0").ok_or("bar matrix has no x_L0")?.to_string();
    let fi = n.index_of(&f).map_err(e)?;
    let xl = m.index_of(&x_l0).map_err(e)?;
    // L0 is the unique line of N whose span contains x_L0.
    let mut l0: Vec<usize> = Vec::new();
    for i in 0..n.size() {
        for j in i + 1..n.size() {
            let (a, b) = (m.index_of(n.label(i)).map_err(e)?, m.index_of(n.label(j)).map_err(e)?);
            if m.rank_of(&[a, b, xl]) == 2 {
                l0 = n.closure(&[i, j]);
            }
        }
    }
    let p: Vec<usize> = n.closure(&[l0.clone(), vec![fi]].concat());
    let pset: BTreeSet<usize> = p.iter().copied().collect();
    let xset: BTreeSet<String> = bar.x.iter().cloned().collect();
    // Lines of P avoiding f, each with its point of X.
    let mut lines: Vec<BTreeSet<usize>> = Vec::new();
    for (i, &a) in p.iter().enumerate() {
        for &b in &p[i + 1..] {
            let l: BTreeSet<usize> = n.closure(&[a, b]).into_iter().collect();
            if !l.contains(&fi) && !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    let x_of = |l: &BTreeSet<usize>| -> Option<String> {
        let mi: Vec<usize> = l.iter().map(|&i| m.index_of(n.label(i)).unwrap()).collect();
        let cl = m.closure(&mi);
        bar.x.iter().find(|xl| cl.contains(&m.index_of(xl).unwrap())).cloned()
    };
    let mut predicted: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    for fl in n.cyclic_flats().map_err(e)? {
        let fs: BTreeSet<usize> = fl.iter().copied().collect();
        let meet: BTreeSet<usize> = fs.intersection(&pset).copied().collect();
        let names = lab(&n, &fl);
        let meet_v: Vec<usize> = meet.iter().copied().collect();
        if meet.len() <= 1 {
            predicted.insert(names.clone());
        }
        if meet.len() == 1 && meet.contains(&fi) {
            predicted.insert(names.union(&xset).cloned().collect());
        }
        if let Some(l) = lines.iter().find(|l| **l == meet) {
            let mut s = names.clone();
            s.insert(x_of(l).ok_or("line without an X point")?);
            predicted.insert(s);
        }
        if n.rank_of(&meet_v) == 2 && !lines.contains(&meet) {
            predicted.insert(names.clone());
        }
        if pset.is_subset(&fs) {
            predicted.insert(names.union(&xset).cloned().collect());
        }
    }
    let missing: Vec<String> = actual.difference(&predicted).map(|s| format!("{s:?}")).collect();
    let extra: Vec<String> = predicted.difference(&actual).map(|s| format!("{s:?}")).collect();
    let flats_ok = missing.is_empty() && extra.is_empty();
    let flats = format!(
        "bar (n = 3, q = 2): {} cyclic flats, five classes give {}{}{}",
        actual.len(),
        predicted.len(),
        if missing.is_empty() {
            String::new()
        } else {
            format!("; not covered: {}", missing.join(", "))
        },
        if extra.is_empty() {
            String::new()
        } else {
            format!("; spurious: {}", extra.join(", "))
        },
    );
    let abs = abstract_hat(3, 2).map_err(e)?;
    let hat = hat_matrix(3, 2).map_err(e)?.mat;
    let direct = abs.size() == hat.cols() && projective_isomorphism(abs.matrix(), &hat, false).map_err(e)?.is_some();
    let target = hat_target(3, 2).map_err(e)?;
    let with_e1 = abs.size() == target.cols()
        && projective_isomorphism(abs.matrix(), &target, false)
            .map_err(e)?
            .is_some();
    let hat_detail = format!(
        "abstract hat has {} points, hat matrix {} columns: {}; with e1 appended: {}",
        abs.size(),
        hat.cols(),
        if direct { "equivalent" } else { "not equivalent" },
        if with_e1 { "equivalent" } else { "not equivalent" },
    );
    let detail = format!("{flats}; {hat_detail}");
    if flats_ok && direct {
        Ok(detail)
    } else {
        Err(detail)
    }
}
