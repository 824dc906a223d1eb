//! Exact arithmetic in GF(p^k) and in quadratic extensions GF(q²) = GF(q)(ω).
//!
//! Elements are stored as integer codes `Σ cᵢ pⁱ` over a fixed basis. For a
//! field built with [`make_field`] the basis is `1, x, …, x^{k-1}` modulo the
//! canonical modulus. For an extension built with [`quadratic_extension`] the
//! code of `u + ωv` is `u + q·v`, so splitting into the `{1, ω}` coordinates is
//! a division by `q`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::DEFAULT_MAX_FIELD_ORDER;

pub type FieldRef = Arc<Field>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Construction {
    /// GF(p)[x] / (modulus), modulus monic, constant term first.
    Poly { modulus: Vec<u32> },
    /// GF(q)[ω] / (ω² − tω − s).
    Quadratic { base: FieldRef, s: u32, t: u32 },
}

/// A finite field with precomputed log/exp tables.
pub struct Field {
    p: u32,
    degree: u32,
    order: u32,
    construction: Construction,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.p == other.p && self.order == other.order && self.construction == other.construction)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.order, self.header())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p), constant term first, used only while choosing moduli.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn digits_of(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(code % p);
        code /= p;
    }
    d
}

fn code_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn monic_with_low(low: u32, p: u32, deg: usize) -> Vec<u32> {
    let mut m = digits_of(low, p, deg);
    m.push(1);
    m
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let g = monic_with_low(low as u32, p, d);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k` over GF(p),
/// comparing coefficient tuples with the constant term most significant.
fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = (p as u64).pow(k as u32);
    // Enumerate tuples (c0, c1, …, c_{k-1}) in lexicographic order, c0 first.
    for idx in 0..count {
        let mut low = vec![0u32; k];
        let mut rest = idx;
        for slot in (0..k).rev() {
            low[slot] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        let mut f = low;
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    fn build(p: u32, degree: u32, order: u32, construction: Construction) -> Field {
        let mut field = Field {
            p,
            degree,
            order,
            construction,
            exp: Vec::new(),
            log: Vec::new(),
            add: None,
            neg: Vec::new(),
        };
        field.neg = (0..order).map(|a| field.slow_neg(a)).collect();
        if order <= 256 {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = field.slow_add(a, b);
                }
            }
            field.add = Some(t);
        }
        let n = order - 1;
        let mut gen_powers = Vec::new();
        for g in 1..order {
            let mut powers = Vec::with_capacity(n as usize);
            let mut x = 1u32;
            loop {
                powers.push(x);
                x = field.slow_mul(x, g);
                if x == 1 {
                    break;
                }
            }
            if powers.len() as u32 == n {
                gen_powers = powers;
                break;
            }
        }
        let mut log = vec![0u32; order as usize];
        for (i, &x) in gen_powers.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let mut exp = gen_powers.clone();
        exp.extend_from_slice(&gen_powers);
        field.exp = exp;
        field.log = log;
        field
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        match &self.construction {
            Construction::Poly { .. } => {
                let da = digits_of(a, self.p, self.degree as usize);
                let db = digits_of(b, self.p, self.degree as usize);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
                code_of(&s, self.p)
            }
            Construction::Quadratic { base, .. } => {
                let q = base.order;
                let (u1, v1) = (a % q, a / q);
                let (u2, v2) = (b % q, b / q);
                base.add(u1, u2) + q * base.add(v1, v2)
            }
        }
    }

    fn slow_neg(&self, a: u32) -> u32 {
        match &self.construction {
            Construction::Poly { .. } => {
                let da = digits_of(a, self.p, self.degree as usize);
                let s: Vec<u32> = da.iter().map(|&x| (self.p - x) % self.p).collect();
                code_of(&s, self.p)
            }
            Construction::Quadratic { base, .. } => {
                let q = base.order;
                base.neg(a % q) + q * base.neg(a / q)
            }
        }
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        match &self.construction {
            Construction::Poly { modulus } => {
                let k = self.degree as usize;
                let da = digits_of(a, self.p, k);
                let db = digits_of(b, self.p, k);
                let mut prod = vec![0u32; 2 * k - 1];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % self.p as u64) as u32;
                    }
                }
                let mut r = poly_rem(&prod, modulus, self.p);
                r.resize(k, 0);
                code_of(&r, self.p)
            }
            Construction::Quadratic { base, s, t } => {
                let q = base.order;
                let (u1, v1) = (a % q, a / q);
                let (u2, v2) = (b % q, b / q);
                let vv = base.mul(v1, v2);
                let u = base.add(base.mul(u1, u2), base.mul(*s, vv));
                let v = base.add(base.add(base.mul(u1, v2), base.mul(v1, u2)), base.mul(*t, vv));
                u + q * v
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients (constant term first) for fields built by
    /// [`make_field`]; `None` for quadratic extensions.
    pub fn modulus(&self) -> Option<&[u32]> {
        match &self.construction {
            Construction::Poly { modulus } => Some(modulus),
            Construction::Quadratic { .. } => None,
        }
    }

    /// For a quadratic extension: the base field and `(s, t)` with ω² = s + tω.
    pub fn extension_of(&self) -> Option<(&FieldRef, u32, u32)> {
        match &self.construction {
            Construction::Quadratic { base, s, t } => Some((base, *s, *t)),
            Construction::Poly { .. } => None,
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.construction, Construction::Quadratic { .. })
    }

    /// Header line used by the matrix file format.
    pub fn header(&self) -> String {
        match &self.construction {
            Construction::Poly { modulus } => {
                let coeffs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                format!("field {} {} {}", self.p, self.degree, coeffs.join(" "))
            }
            Construction::Quadratic { base, s, t } => {
                format!("ext {} {} {} {}", base.p, base.degree, s, t)
            }
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Some(t) => t[(a * self.order + b) as usize],
            None => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Inverse of a nonzero element. Panics on zero; see [`Field::try_inv`].
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.order - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn try_inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.order - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[l as usize]
    }

    /// Membership in the subfield of order `q` (assumed to exist): a^q = a.
    pub fn in_subfield(&self, a: u32, q: u32) -> bool {
        if let Some((base, _, _)) = self.extension_of() {
            if base.order == q {
                return a < q;
            }
        }
        self.pow(a, q as i64) == a
    }

    /// True when this field has a subfield of order `q`.
    pub fn has_subfield_of_order(&self, q: u32) -> bool {
        let mut e = 0u32;
        let mut x = q;
        while x > 1 {
            if !x.is_multiple_of(self.p) {
                return false;
            }
            x /= self.p;
            e += 1;
        }
        e >= 1 && self.degree.is_multiple_of(e)
    }

    /// Elements of the subfield of order `q`, ascending by code.
    pub fn subfield_elements(&self, q: u32) -> Vec<u32> {
        (0..self.order).filter(|&a| self.in_subfield(a, q)).collect()
    }

    /// Split an extension element into its `{1, ω}` coordinates.
    pub fn decompose(&self, a: u32) -> Result<(u32, u32)> {
        match &self.construction {
            Construction::Quadratic { base, .. } => Ok((a % base.order, a / base.order)),
            Construction::Poly { .. } => Err(Error::NotExtension),
        }
    }

    /// Code of ω in an extension field.
    pub fn omega(&self) -> Result<u32> {
        match &self.construction {
            Construction::Quadratic { base, .. } => Ok(base.order),
            Construction::Poly { .. } => Err(Error::NotExtension),
        }
    }

    /// Coefficient tuple of a code (length = degree over GF(p)).
    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits_of(a, self.p, self.degree as usize)
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if a < self.order {
            Ok(a)
        } else {
            Err(Error::BadElement {
                code: a,
                order: self.order,
            })
        }
    }

    /// Human-readable rendering: prime-field digits, or `u+ωv` for extensions.
    pub fn display(&self, a: u32) -> String {
        match &self.construction {
            Construction::Quadratic { base, .. } => {
                let (u, v) = (a % base.order, a / base.order);
                match (u, v) {
                    (u, 0) => base.display(u),
                    (0, 1) => "w".to_string(),
                    (0, v) => format!("{}w", base.display(v)),
                    (u, 1) => format!("{}+w", base.display(u)),
                    (u, v) => format!("{}+{}w", base.display(u), base.display(v)),
                }
            }
            Construction::Poly { .. } if self.degree == 1 => a.to_string(),
            Construction::Poly { .. } => format!("<{a}>"),
        }
    }
}

/// Canonical GF(p^k), order bounded by 2¹⁶.
pub fn make_field(p: u32, k: u32) -> Result<FieldRef> {
    make_field_bounded(p, k, DEFAULT_MAX_FIELD_ORDER)
}

pub fn make_field_bounded(p: u32, k: u32, max_order: u32) -> Result<FieldRef> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let order = (p as u64).checked_pow(k).filter(|&o| o <= max_order as u64);
    let Some(order) = order else {
        return Err(Error::SizeBound(format!(
            "GF({p}^{k}) exceeds the field bound {max_order}"
        )));
    };
    let modulus = canonical_modulus(p, k);
    Ok(Arc::new(Field::build(
        p,
        k,
        order as u32,
        Construction::Poly { modulus },
    )))
}

/// GF(p^k) with an explicit monic modulus `c₀ + c₁x + … + x^k`, given
/// lowest coefficient first.
pub fn field_with_modulus(p: u32, modulus: &[u32]) -> Result<FieldRef> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if modulus.len() < 2 {
        return Err(Error::ZeroDegree);
    }
    let k = (modulus.len() - 1) as u32;
    if modulus.iter().any(|&c| c >= p) || *modulus.last().expect("nonempty") != 1 {
        return Err(Error::Precondition(
            "modulus must be monic with coefficients below p".into(),
        ));
    }
    let order = (p as u64)
        .checked_pow(k)
        .filter(|&o| o <= DEFAULT_MAX_FIELD_ORDER as u64);
    let Some(order) = order else {
        return Err(Error::SizeBound(format!("GF({p}^{k}) exceeds the field bound")));
    };
    if !is_irreducible(modulus, p) {
        return Err(Error::Precondition("modulus is reducible".into()));
    }
    Ok(Arc::new(Field::build(
        p,
        k,
        order as u32,
        Construction::Poly {
            modulus: modulus.to_vec(),
        },
    )))
}

/// Field of order `q` (a prime power), canonical construction.
pub fn field_of_order(q: u32) -> Result<FieldRef> {
    if q < 2 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut k = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    if x != 1 {
        return Err(Error::Precondition(format!("{q} is not a prime power")));
    }
    make_field(p, k)
}

/// A quadratic extension GF(q²) = GF(q)(ω), ω² = s + tω.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtSpec {
    pub base: FieldRef,
    pub ext: FieldRef,
    pub s: u32,
    pub t: u32,
}

impl ExtSpec {
    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn omega(&self) -> u32 {
        self.base.order()
    }

    /// Subfield embedding GF(q) → GF(q²).
    #[inline]
    pub fn embed(&self, a: u32) -> u32 {
        a
    }

    #[inline]
    pub fn decompose(&self, w: u32) -> (u32, u32) {
        (w % self.q(), w / self.q())
    }

    #[inline]
    pub fn compose(&self, u: u32, v: u32) -> u32 {
        u + self.q() * v
    }

    pub fn in_subfield(&self, w: u32) -> bool {
        w < self.q()
    }

    /// Recover the extension data from an extension field.
    pub fn from_field(ext: &FieldRef) -> Result<ExtSpec> {
        let (base, s, t) = ext.extension_of().ok_or(Error::NotExtension)?;
        Ok(ExtSpec {
            base: base.clone(),
            ext: ext.clone(),
            s,
            t,
        })
    }
}

/// Build GF(q²) over `base` from the lexicographically smallest monic
/// irreducible quadratic x² + c₁x + c₀ (c₀ most significant), so s = −c₀ and
/// t = −c₁.
pub fn quadratic_extension(base: &FieldRef) -> Result<ExtSpec> {
    let q = base.order();
    if (q as u64) * (q as u64) > DEFAULT_MAX_FIELD_ORDER as u64 {
        return Err(Error::SizeBound(format!(
            "GF({q}²) exceeds the field bound {DEFAULT_MAX_FIELD_ORDER}"
        )));
    }
    for c0 in 0..q {
        for c1 in 0..q {
            let has_root = (0..q).any(|r| {
                let v = base.add(base.add(base.mul(r, r), base.mul(c1, r)), c0);
                v == 0
            });
            if !has_root {
                return extension_with(base, base.neg(c0), base.neg(c1));
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// Build GF(q²) with a caller-chosen ω² = s + tω (x² − tx − s must be
/// irreducible over the base).
pub fn extension_with(base: &FieldRef, s: u32, t: u32) -> Result<ExtSpec> {
    let q = base.order();
    base.check(s)?;
    base.check(t)?;
    let reducible = (0..q).any(|r| {
        let v = base.sub(base.sub(base.mul(r, r), base.mul(t, r)), s);
        v == 0
    });
    if reducible {
        return Err(Error::Precondition(format!(
            "x² − {t}x − {s} is reducible over GF({q})"
        )));
    }
    let ext = Arc::new(Field::build(
        base.characteristic(),
        2 * base.degree(),
        q * q,
        Construction::Quadratic {
            base: base.clone(),
            s,
            t,
        },
    ));
    Ok(ExtSpec {
        base: base.clone(),
        ext,
        s,
        t,
    })
}

/// Canonical GF(q²) over canonical GF(q).
pub fn extension_of_order(q: u32) -> Result<ExtSpec> {
    quadratic_extension(&field_of_order(q)?)
}

/// An element tagged with its field, for checked arithmetic.
#[derive(Clone)]
pub struct Elem {
    field: FieldRef,
    code: u32,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.display(self.code))
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}
impl Eq for Elem {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Elem {
    pub fn new(field: &FieldRef, code: u32) -> Result<Elem> {
        field.check(code)?;
        Ok(Elem {
            field: field.clone(),
            code,
        })
    }

    pub fn zero(field: &FieldRef) -> Elem {
        Elem {
            field: field.clone(),
            code: 0,
        }
    }

    pub fn one(field: &FieldRef) -> Elem {
        Elem {
            field: field.clone(),
            code: 1,
        }
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coefficients(&self) -> Vec<u32> {
        self.field.coefficients(self.code)
    }

    pub fn apply(&self, op: ArithOp, other: &Elem) -> Result<Elem> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let code = match op {
            ArithOp::Add => f.add(self.code, other.code),
            ArithOp::Sub => f.sub(self.code, other.code),
            ArithOp::Mul => f.mul(self.code, other.code),
            ArithOp::Div => f.mul(self.code, f.try_inv(other.code)?),
        };
        Ok(Elem { field: f.clone(), code })
    }

    pub fn add(&self, other: &Elem) -> Result<Elem> {
        self.apply(ArithOp::Add, other)
    }
    pub fn sub(&self, other: &Elem) -> Result<Elem> {
        self.apply(ArithOp::Sub, other)
    }
    pub fn mul(&self, other: &Elem) -> Result<Elem> {
        self.apply(ArithOp::Mul, other)
    }
    pub fn div(&self, other: &Elem) -> Result<Elem> {
        self.apply(ArithOp::Div, other)
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(Elem {
            field: self.field.clone(),
            code: self.field.try_inv(self.code)?,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Elem> {
        if self.code == 0 && e < 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Elem {
            field: self.field.clone(),
            code: self.field.pow(self.code, e),
        })
    }

    /// `(u, v)` with `self = u + ωv`, as elements of the base field.
    pub fn decompose(&self) -> Result<(Elem, Elem)> {
        let (u, v) = self.field.decompose(self.code)?;
        let (base, _, _) = self.field.extension_of().ok_or(Error::NotExtension)?;
        Ok((Elem::new(base, u)?, Elem::new(base, v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(make_field(2, 1).unwrap().modulus().unwrap(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus().unwrap(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus().unwrap(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 17), Err(Error::SizeBound(_))));
        assert!(matches!(make_field(2, 0), Err(Error::ZeroDegree)));
    }

    #[test]
    fn extension_constants() {
        let e2 = extension_of_order(2).unwrap();
        assert_eq!((e2.s, e2.t), (1, 1));
        let e3 = extension_of_order(3).unwrap();
        assert_eq!((e3.s, e3.t), (2, 0));
        for e in [e2, e3, extension_of_order(4).unwrap()] {
            let w = e.omega();
            let f = &e.ext;
            let lhs = f.mul(w, w);
            let rhs = f.add(e.embed(e.s), f.mul(e.embed(e.t), w));
            assert_eq!(lhs, rhs);
            for a in 0..e.q() {
                assert_eq!(e.decompose(e.embed(a)), (a, 0));
            }
        }
    }

    #[test]
    fn inverses_of_omega() {
        let e2 = extension_of_order(2).unwrap();
        let f = &e2.ext;
        let w = e2.omega();
        let w1 = f.add(w, 1);
        assert_eq!(f.mul(w, w1), 1);
        assert_eq!(f.inv(w), w1);
        let e3 = extension_of_order(3).unwrap();
        let f = &e3.ext;
        let w = e3.omega();
        let two_w = f.mul(2, w);
        assert_eq!(f.mul(w, two_w), 1);
        assert_eq!(f.inv(w), two_w);
    }

    #[test]
    fn decompose_examples() {
        let e2 = extension_of_order(2).unwrap();
        assert_eq!(e2.decompose(e2.omega()), (0, 1));
        assert_eq!(e2.decompose(e2.ext.add(1, e2.omega())), (1, 1));
    }

    #[test]
    fn checked_elements() {
        let f4 = make_field(2, 2).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let a = Elem::new(&f4, 2).unwrap();
        let b = Elem::new(&f3, 2).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
        assert_eq!(a.div(&Elem::zero(&f4)).unwrap_err(), Error::DivisionByZero);
        assert_eq!(Elem::zero(&f4).inv().unwrap_err(), Error::DivisionByZero);
        assert!(Elem::new(&f4, 4).is_err());
        for c in 0..4 {
            let x = Elem::new(&f4, c).unwrap();
            assert_eq!(x.add(&Elem::zero(&f4)).unwrap(), x);
            assert_eq!(x.mul(&Elem::one(&f4)).unwrap(), x);
        }
        assert!(a.decompose().is_err());
    }

    #[test]
    fn subfields() {
        let f16 = make_field(2, 4).unwrap();
        assert!(f16.has_subfield_of_order(4));
        assert!(!f16.has_subfield_of_order(8));
        assert_eq!(f16.subfield_elements(4).len(), 4);
        let f8 = make_field(2, 3).unwrap();
        assert!(!f8.has_subfield_of_order(4));
        let e = extension_of_order(3).unwrap();
        for w in 0..9 {
            assert_eq!(e.ext.in_subfield(w, 3), e.decompose(w).1 == 0);
            // The generic Frobenius test agrees with the coordinate test.
            assert_eq!(e.ext.pow(w, 3) == w, e.in_subfield(w));
        }
    }
}
