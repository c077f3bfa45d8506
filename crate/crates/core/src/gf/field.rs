//! Arithmetic in GF(q) for prime powers 2 <= q <= 256.
//!
//! Elements are encoded as integers `0..q`. For a prime field this is the
//! residue itself. For an extension field GF(p^e) the element
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is encoded as
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, so `x` is encoded as `p`.
//!
//! Extension-field multiplication goes through exp/log tables built once per
//! field. Unless a modulus is supplied, the modulus is the lowest-valued monic
//! primitive polynomial of degree `e` over GF(p), valuing a polynomial by the
//! base-p integer of its coefficients (constant term least significant). This
//! yields the usual choices: `x^2+x+1` for GF(4), `x^3+x+1` for GF(8),
//! `x^4+x+1` for GF(16) and `x^8+x^4+x^3+x^2+1` for GF(256).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Elem = u8;

/// The four primitive field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// GF(q) with precomputed tables. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

struct Tables {
    q: usize,
    p: usize,
    e: usize,
    /// Monic modulus, coefficients constant term first. `None` for prime fields.
    modulus: Option<Vec<u8>>,
    kind: Kind,
}

enum Kind {
    Prime,
    Extension {
        add: Vec<Elem>,
        neg: Vec<Elem>,
        /// `exp[i] = g^i` for `i < 2(q-1)`, doubled to skip a reduction.
        exp: Vec<Elem>,
        log: Vec<usize>,
    },
}

/// Serializable description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: usize,
    pub modulus: Option<Vec<u8>>,
}

impl Field {
    /// GF(q) with the default modulus when `q` is not prime.
    pub fn new(q: usize) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            return Ok(Self::build(q, p, e, None));
        }
        let modulus = default_modulus(p, e);
        Ok(Self::build(q, p, e, Some(modulus)))
    }

    /// GF(q) with an explicit modulus, constant term first. For `q = p^e` with
    /// `e > 1` the modulus must be monic of degree `e` and irreducible.
    pub fn with_modulus(q: usize, modulus: &[u8]) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            if modulus.len() > 2 {
                return Err(Error::Domain(format!(
                    "GF({q}) is a prime field and takes no modulus of degree > 1"
                )));
            }
            return Ok(Self::build(q, p, e, None));
        }
        if modulus.len() != e + 1 || modulus[e] != 1 {
            return Err(Error::Domain(format!(
                "modulus for GF({q}) must be monic of degree {e} ({} coefficients, constant term first)",
                e + 1
            )));
        }
        if modulus.iter().any(|&c| c as usize >= p) {
            return Err(Error::Domain(format!("modulus coefficients must be < {p}")));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::Domain(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Ok(Self::build(q, p, e, Some(modulus.to_vec())))
    }

    /// Field from its serialized description.
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        match &spec.modulus {
            Some(m) => Self::with_modulus(spec.q, m),
            None => Self::new(spec.q),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            q: self.q(),
            modulus: self.inner.modulus.clone(),
        }
    }

    fn build(q: usize, p: usize, e: usize, modulus: Option<Vec<u8>>) -> Self {
        let kind = match &modulus {
            None => Kind::Prime,
            Some(m) => {
                let add = (0..q * q)
                    .map(|ab| digit_add(ab / q, ab % q, p, e) as Elem)
                    .collect();
                let neg = (0..q).map(|a| digit_neg(a, p, e) as Elem).collect();
                let (exp, log) = exp_log_tables(q, p, e, m);
                Kind::Extension { add, neg, exp, log }
            }
        };
        Field {
            inner: Arc::new(Tables {
                q,
                p,
                e,
                modulus,
                kind,
            }),
        }
    }

    pub fn q(&self) -> usize {
        self.inner.q
    }

    pub fn characteristic(&self) -> usize {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.e
    }

    pub fn modulus(&self) -> Option<&[u8]> {
        self.inner.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Prime => ((a as usize + b as usize) % self.inner.p) as Elem,
            Kind::Extension { add, .. } => add[a as usize * self.inner.q + b as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Prime => ((self.inner.p - a as usize) % self.inner.p) as Elem,
            Kind::Extension { neg, .. } => neg[a as usize],
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.inner.kind {
            Kind::Prime => ((a as usize * b as usize) % self.inner.p) as Elem,
            Kind::Extension { exp, log, .. } => exp[log[a as usize] + log[b as usize]],
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.inv_nonzero(a))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        match &self.inner.kind {
            Kind::Prime => {
                let p = self.inner.p;
                let mut acc = 1usize;
                let mut base = a as usize;
                let mut k = p - 2;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    k >>= 1;
                }
                acc as Elem
            }
            Kind::Extension { exp, log, .. } => {
                let order = self.inner.q - 1;
                exp[(order - log[a as usize]) % order]
            }
        }
    }

    /// Checked dispatch over [`FieldOp`]; `b` is ignored for unary ops.
    pub fn apply(&self, a: Elem, b: Elem, op: FieldOp) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
        }
    }

    pub fn check(&self, a: Elem) -> Result<()> {
        if (a as usize) < self.q() {
            Ok(())
        } else {
            Err(Error::Domain(format!("{a} is not an element of GF({})", self.q())))
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.modulus() == other.modulus()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "GF({})", self.q()),
            Some(m) => write!(f, "GF({}; modulus {:?})", self.q(), m),
        }
    }
}

/// Splits `q` into `(p, e)` with `q = p^e`, `p` prime.
pub fn prime_power(q: usize) -> Result<(usize, usize)> {
    if !(2..=256).contains(&q) {
        return Err(Error::Domain(format!("field size {q} outside 2..=256")));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    Ok((p, e))
}

fn digits(mut a: usize, p: usize, e: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(e);
    for _ in 0..e {
        d.push(a % p);
        a /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn digit_add(a: usize, b: usize, p: usize, e: usize) -> usize {
    let s: Vec<usize> = digits(a, p, e)
        .into_iter()
        .zip(digits(b, p, e))
        .map(|(x, y)| (x + y) % p)
        .collect();
    undigits(&s, p)
}

fn digit_neg(a: usize, p: usize, e: usize) -> usize {
    let s: Vec<usize> = digits(a, p, e).into_iter().map(|x| (p - x) % p).collect();
    undigits(&s, p)
}

/// Product of two encoded elements modulo the monic `modulus`.
fn poly_mulmod(a: usize, b: usize, p: usize, e: usize, modulus: &[u8]) -> usize {
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let mut prod = vec![0usize; 2 * e];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        // x^k = x^{k-e} * x^e and x^e = -(m_0 + ... + m_{e-1} x^{e-1})
        prod[k] = 0;
        for (i, &m) in modulus[..e].iter().enumerate() {
            let t = c * m as usize % p;
            prod[k - e + i] = (prod[k - e + i] + p - t) % p;
        }
    }
    undigits(&prod[..e], p)
}

fn exp_log_tables(q: usize, p: usize, e: usize, modulus: &[u8]) -> (Vec<Elem>, Vec<usize>) {
    let order = q - 1;
    let generator = (2..q)
        .find(|&g| multiplicative_order(g, p, e, modulus) == order)
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = vec![0 as Elem; 2 * order];
    let mut log = vec![0usize; q];
    let mut cur = 1usize;
    for i in 0..order {
        exp[i] = cur as Elem;
        exp[i + order] = cur as Elem;
        log[cur] = i;
        cur = poly_mulmod(cur, generator, p, e, modulus);
    }
    (exp, log)
}

fn multiplicative_order(g: usize, p: usize, e: usize, modulus: &[u8]) -> usize {
    let mut cur = g;
    let mut k = 1;
    while cur != 1 {
        cur = poly_mulmod(cur, g, p, e, modulus);
        k += 1;
        if cur == 0 || k > p.pow(e as u32) {
            return 0;
        }
    }
    k
}

/// Remainder of `a` by monic `b` over GF(p); both constant term first.
fn poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic `poly` (constant term first) has no monic factor of degree 1..=deg/2.
pub(crate) fn is_irreducible(poly: &[u8], p: usize) -> bool {
    let a: Vec<usize> = poly.iter().map(|&c| c as usize).collect();
    let deg = a.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut b = digits(low, p, d);
            b.push(1);
            if poly_rem(&a, &b, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: usize, e: usize) -> Vec<u8> {
    let q = p.pow(e as u32);
    (0..q)
        .map(|low| {
            let mut m: Vec<u8> = digits(low, p, e).into_iter().map(|c| c as u8).collect();
            m.push(1);
            m
        })
        .find(|m| m[0] != 0 && is_irreducible(m, p) && multiplicative_order(p, p, e, m) == q - 1)
        .expect("primitive polynomials exist in every degree")
}
