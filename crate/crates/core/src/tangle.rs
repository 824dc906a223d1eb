//! Tangles of small order: the families T_k(M), axiom checks, induced
//! tangles and the tangle matroid. Subsets of the ground set are bitmasks
//! over element indices.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{precondition, Error, Result};
use crate::matroid::{same_matroid, RankTable, RepMatroid};

/// Host matroid with its tabulated rank function.
#[derive(Clone, Debug)]
pub struct Host {
    pub matroid: RepMatroid,
    table: Arc<RankTable>,
}

impl Host {
    pub fn new(m: &RepMatroid) -> Result<Host> {
        Ok(Host {
            matroid: m.clone(),
            table: Arc::new(m.element_rank_table()?),
        })
    }

    pub fn size(&self) -> usize {
        self.matroid.size()
    }

    pub fn full(&self) -> usize {
        self.table.full_mask()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.table.rank(x)
    }

    pub fn lambda(&self, x: usize) -> usize {
        self.rank(x) + self.rank(self.full() & !x) - self.matroid.rank()
    }

    pub fn mask<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.matroid.indices(labels)?.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn labels(&self, x: usize) -> Vec<String> {
        (0..self.size())
            .filter(|i| x & (1 << i) != 0)
            .map(|i| self.matroid.label(i).to_string())
            .collect()
    }
}

/// `M / contract \ delete`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MinorRecipe {
    pub delete: Vec<String>,
    pub contract: Vec<String>,
}

impl MinorRecipe {
    pub fn apply(&self, m: &RepMatroid) -> Result<RepMatroid> {
        m.minor_by_labels(&self.delete, &self.contract, false)
    }
}

#[derive(Clone, Debug)]
enum Membership {
    Explicit(BTreeSet<usize>),
    Induced {
        /// Host index → index in the minor.
        map: Vec<Option<usize>>,
        base: Box<Tangle>,
    },
}

/// A candidate tangle: host, order and a membership rule for small sets.
#[derive(Clone, Debug)]
pub struct Tangle {
    pub host: Host,
    pub order: usize,
    membership: Membership,
}

impl Tangle {
    pub fn explicit(host: Host, order: usize, sets: impl IntoIterator<Item = usize>) -> Tangle {
        Tangle {
            host,
            order,
            membership: Membership::Explicit(sets.into_iter().collect()),
        }
    }

    pub fn is_small(&self, x: usize) -> bool {
        match &self.membership {
            Membership::Explicit(s) => s.contains(&x),
            Membership::Induced { map, base } => {
                if self.host.lambda(x) + 1 >= self.order {
                    return false;
                }
                let mut y = 0usize;
                for (i, m) in map.iter().enumerate() {
                    if let (true, Some(j)) = (x & (1 << i) != 0, m) {
                        y |= 1 << j;
                    }
                }
                base.is_small(y)
            }
        }
    }

    /// Every small set, ascending by mask.
    pub fn small_sets(&self) -> Vec<usize> {
        match &self.membership {
            Membership::Explicit(s) => s.iter().copied().collect(),
            Membership::Induced { .. } => (0..=self.host.full()).filter(|&x| self.is_small(x)).collect(),
        }
    }

    pub fn is_induced(&self) -> bool {
        matches!(self.membership, Membership::Induced { .. })
    }
}

/// `X` with `λ(X) < k − 1`, `X` not spanning and `E − X` dependent.
pub fn t_k_sets(m: &RepMatroid, k: usize) -> Result<Vec<usize>> {
    let host = Host::new(m)?;
    Ok(t_k_masks(&host, k))
}

fn t_k_masks(host: &Host, k: usize) -> Vec<usize> {
    let r = host.matroid.rank();
    let full = host.full();
    (0..=full)
        .filter(|&x| {
            let rest = full & !x;
            host.lambda(x) + 1 < k && host.rank(x) < r && host.rank(rest) < rest.count_ones() as usize
        })
        .collect()
}

/// T_k(M) as a candidate tangle of order `k`.
pub fn t_k_tangle(m: &RepMatroid, k: usize) -> Result<Tangle> {
    let host = Host::new(m)?;
    let sets = t_k_masks(&host, k);
    Ok(Tangle::explicit(host, k, sets))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// A small set that is not separating, or a separating set with
    /// neither side small.
    T1,
    /// Three small sets covering the ground set.
    T2,
    /// The complement of a single element is small.
    T3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::T1 => "T1",
            Axiom::T2 => "T2",
            Axiom::T3 => "T3",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub sets: Vec<Vec<String>>,
}

/// Check the three tangle axioms exhaustively.
pub fn is_tangle(t: &Tangle) -> Result<Option<Violation>> {
    let h = &t.host;
    let full = h.full();
    let theta = t.order;
    if theta == 0 {
        return precondition("tangle order must be positive");
    }
    let small = t.small_sets();
    let witness = |axiom: Axiom, sets: &[usize]| {
        Ok(Some(Violation {
            axiom,
            sets: sets.iter().map(|&x| h.labels(x)).collect(),
        }))
    };
    for &x in &small {
        if h.lambda(x) + 1 >= theta {
            return witness(Axiom::T1, &[x]);
        }
    }
    for x in 0..=full {
        if h.lambda(x) + 1 < theta && !t.is_small(x) && !t.is_small(full & !x) {
            return witness(Axiom::T1, &[x]);
        }
    }
    for e in 0..h.size() {
        let x = full & !(1 << e);
        if t.is_small(x) {
            return witness(Axiom::T3, &[x]);
        }
    }
    let maximal: Vec<usize> = small
        .iter()
        .copied()
        .filter(|&x| !small.iter().any(|&y| y != x && y & x == x))
        .collect();
    for (i, &a) in maximal.iter().enumerate() {
        for (j, &b) in maximal.iter().enumerate().skip(i) {
            for &c in &maximal[j..] {
                if a | b | c == full {
                    return witness(Axiom::T2, &[a, b, c]);
                }
            }
        }
    }
    Ok(None)
}

/// `{X ⊆ E(M) : λ_M(X) < θ − 1, X ∩ E(N) ∈ T_N}` for `N` produced from
/// `M` by `recipe`.
pub fn induced_tangle(m: &RepMatroid, recipe: &MinorRecipe, base: &Tangle) -> Result<Tangle> {
    let n = recipe.apply(m)?;
    if !same_matroid(&n, &base.host.matroid)? {
        return precondition("the recipe does not produce the tangle's host");
    }
    let host = Host::new(m)?;
    let map = (0..m.size())
        .map(|i| base.host.matroid.index_of(m.label(i)).ok())
        .collect();
    Ok(Tangle {
        host,
        order: base.order,
        membership: Membership::Induced {
            map,
            base: Box::new(base.clone()),
        },
    })
}

/// κ_T on every subset, by a superset-minimum sweep.
pub fn tangle_ranks(t: &Tangle) -> Vec<usize> {
    let h = &t.host;
    let cap = t.order.saturating_sub(1);
    let mut kappa: Vec<usize> = (0..=h.full())
        .map(|x| if t.is_small(x) { h.lambda(x).min(cap) } else { cap })
        .collect();
    for i in 0..h.size() {
        for x in 0..=h.full() {
            if x & (1 << i) == 0 {
                let up = kappa[x | (1 << i)];
                if up < kappa[x] {
                    kappa[x] = up;
                }
            }
        }
    }
    kappa
}

/// κ_T(X): θ − 1 if no small set contains X, else the least λ of one.
pub fn tangle_rank<S: AsRef<str>>(t: &Tangle, x: &[S]) -> Result<usize> {
    let h = &t.host;
    let xm = h.mask(x)?;
    let free = h.full() & !xm;
    let mut best = t.order.saturating_sub(1);
    // Enumerate supersets of X as X ∪ (subsets of the complement).
    let mut sub = free;
    loop {
        let z = xm | sub;
        if t.is_small(z) {
            best = best.min(h.lambda(z));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Ok(best)
}

/// Rank axioms of κ_T and total rank θ − 1.
pub fn tangle_matroid_check(t: &Tangle) -> Result<bool> {
    if t.host.size() > 24 {
        return Err(Error::SizeBound(
            "tangle matroid check supports at most 24 elements".into(),
        ));
    }
    let k = tangle_ranks(t);
    let n = t.host.size();
    let full = t.host.full();
    if k[full] + 1 != t.order {
        return Ok(false);
    }
    for x in 0..=full {
        if k[x] > x.count_ones() as usize {
            return Ok(false);
        }
        for e in 0..n {
            if x & (1 << e) != 0 {
                continue;
            }
            let xe = x | (1 << e);
            if k[xe] < k[x] || k[xe] > k[x] + 1 {
                return Ok(false);
            }
            for f in e + 1..n {
                if x & (1 << f) == 0 && k[xe] + k[x | (1 << f)] < k[xe | (1 << f)] + k[x] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::geometry::pg_matrix;
    use crate::linalg::Mat;

    fn pg(n: usize, q: u32) -> RepMatroid {
        pg_matrix(n, q).unwrap().matroid()
    }

    #[test]
    fn t_k_of_the_fano_plane() {
        let m = pg(3, 2);
        let sets = t_k_sets(&m, 3).unwrap();
        assert_eq!(sets.len(), 8);
        assert!(sets.iter().all(|x| x.count_ones() <= 1));
        assert!(t_k_sets(&m, 1).unwrap().is_empty());
        let t = t_k_tangle(&m, 3).unwrap();
        assert_eq!(is_tangle(&t).unwrap(), None);
        assert!(tangle_matroid_check(&t).unwrap());
        assert_eq!(tangle_rank(&t, &["p1"]).unwrap(), 1);
        assert_eq!(tangle_rank::<&str>(&t, &[]).unwrap(), 0);
        assert_eq!(tangle_rank(&t, &["p1", "p2"]).unwrap(), 2);
    }

    #[test]
    fn two_element_free_matroid_is_not_a_tangle() {
        let f = make_field(2, 1).unwrap();
        let m = RepMatroid::new(Mat::identity(&f, 2));
        let t = t_k_tangle(&m, 2).unwrap();
        assert!(is_tangle(&t).unwrap().is_some());
    }

    #[test]
    fn corrupted_family_fails() {
        let m = pg(3, 2);
        let mut sets = t_k_sets(&m, 3).unwrap();
        let host = Host::new(&m).unwrap();
        sets.push(host.full() & !1);
        let t = Tangle::explicit(host.clone(), 3, sets.clone());
        assert_eq!(is_tangle(&t).unwrap().unwrap().axiom, Axiom::T3);
        sets.pop();
        sets.retain(|&x| x != 1);
        let t = Tangle::explicit(host, 3, sets);
        assert_eq!(is_tangle(&t).unwrap().unwrap().axiom, Axiom::T1);
        assert!(!tangle_matroid_check(&t).unwrap());
    }

    #[test]
    fn identity_minor_induces_the_same_tangle() {
        let m = pg(3, 2);
        let t = t_k_tangle(&m, 3).unwrap();
        let ind = induced_tangle(&m, &MinorRecipe::default(), &t).unwrap();
        assert_eq!(ind.small_sets(), t.small_sets());
    }
}
