//! Finite fields `GF(p^e)` with exact table-backed arithmetic.
//!
//! Elements are stored as indices `0..q`. For prime fields the index is the
//! residue itself; for extension fields the index encodes the coefficient
//! vector of the element in base `p` (constant term least significant), with
//! the modulus taken from the canonical polynomial table below.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Element index inside a field. Valid values are `0..q` with `q <= 2^16`.
pub type Elt = u16;

/// Hard cap on constructible field orders.
pub const FIELD_ORDER_CAP: u64 = 1 << 16;

/// Fields verified exhaustively (associativity, distributivity) at
/// construction time.
const EXHAUSTIVE_CHECK_CAP: u64 = 256;

/// Canonical irreducible polynomials for small extension fields: for each
/// `(p, e)` the monic irreducible of degree `e` over `F_p` whose coefficient
/// encoding `sum(c_i * p^i)` is smallest. Shipping the table fixes the
/// element indexing across builds; larger fields fall back to the same
/// deterministic search at construction time.
const CANONICAL_POLYS: &[((u64, u32), &[u16])] = &[
    ((2, 2), &[1, 1, 1]),
    ((2, 3), &[1, 1, 0, 1]),
    ((2, 4), &[1, 1, 0, 0, 1]),
    ((2, 5), &[1, 0, 1, 0, 0, 1]),
    ((2, 6), &[1, 1, 0, 0, 0, 0, 1]),
    ((2, 7), &[1, 1, 0, 0, 0, 0, 0, 1]),
    ((2, 8), &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    ((2, 9), &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    ((2, 10), &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    ((3, 2), &[1, 0, 1]),
    ((3, 3), &[1, 2, 0, 1]),
    ((3, 4), &[2, 1, 0, 0, 1]),
    ((3, 5), &[1, 2, 0, 0, 0, 1]),
    ((3, 6), &[2, 1, 0, 0, 0, 0, 1]),
    ((5, 2), &[2, 0, 1]),
    ((5, 3), &[1, 1, 0, 1]),
    ((5, 4), &[2, 0, 0, 0, 1]),
    ((7, 2), &[1, 0, 1]),
    ((7, 3), &[2, 0, 0, 1]),
    ((11, 2), &[1, 0, 1]),
    ((13, 2), &[2, 0, 1]),
    ((17, 2), &[3, 0, 1]),
    ((19, 2), &[1, 0, 1]),
    ((23, 2), &[1, 0, 1]),
    ((29, 2), &[2, 0, 1]),
    ((31, 2), &[1, 0, 1]),
];

/// A concrete finite field `GF(p^e)`.
///
/// Immutable after construction; share via [`Field`] (`Arc`).
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    /// Coefficients `c_0..c_e` of the modulus (empty for prime fields).
    modulus: Vec<u16>,
    add_table: Option<Vec<Elt>>,
    mul_table: Option<Vec<Elt>>,
    inv_table: Vec<Elt>,
    neg_table: Vec<Elt>,
    primitive: Elt,
}

/// Shared handle to a field.
pub type Field = Arc<FiniteField>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^e`; errors if `q` is not a prime power.
pub fn factor_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Parse(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if rest != 1 {
                return Err(Error::Parse(format!("{q} is not a prime power")));
            }
            return Ok((p, e));
        }
        p += 1;
    }
    Ok((q, 1)) // q itself prime
}

fn poly_is_irreducible(f: &[u16], p: u64) -> bool {
    let e = f.len() - 1;
    if e == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=e/2
    for deg in 1..=e / 2 {
        let count = p.pow(deg as u32);
        for enc in 0..count {
            let mut d = Vec::with_capacity(deg + 1);
            let mut x = enc;
            for _ in 0..deg {
                d.push((x % p) as u16);
                x /= p;
            }
            d.push(1);
            // long division of f by the monic divisor d
            let mut rem: Vec<i64> = f.iter().map(|&c| c as i64).collect();
            while rem.len() >= d.len() {
                let shift = rem.len() - d.len();
                let c = rem[rem.len() - 1];
                for (i, &dc) in d.iter().enumerate() {
                    rem[shift + i] = (rem[shift + i] - c * dc as i64).rem_euclid(p as i64);
                }
                rem.pop();
                while rem.len() > 1 && *rem.last().unwrap() == 0 {
                    rem.pop();
                }
            }
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn canonical_irreducible(p: u64, e: u32) -> Result<Vec<u16>> {
    if let Some((_, poly)) = CANONICAL_POLYS.iter().find(|((tp, te), _)| *tp == p && *te == e) {
        return Ok(poly.to_vec());
    }
    // deterministic search: smallest coefficient encoding first
    let count = p.pow(e);
    for enc in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut x = enc;
        for _ in 0..e {
            f.push((x % p) as u16);
            x /= p;
        }
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::NoIrreducible { p, e })
}

impl FiniteField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// `q` narrowed to the element type range.
    pub fn q(&self) -> u32 {
        self.q as u32
    }

    /// Modulus coefficients `c_0..c_e`; empty for prime fields.
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// The canonical primitive element: smallest index of multiplicative
    /// order `q - 1`.
    pub fn primitive_element(&self) -> Elt {
        self.primitive
    }

    fn add_raw(&self, a: Elt, b: Elt) -> Elt {
        if self.e == 1 {
            ((a as u64 + b as u64) % self.p) as Elt
        } else {
            // digit-wise addition base p
            let (mut a, mut b) = (a as u64, b as u64);
            let mut out = 0u64;
            let mut mult = 1u64;
            while a > 0 || b > 0 {
                out += ((a % self.p + b % self.p) % self.p) * mult;
                a /= self.p;
                b /= self.p;
                mult *= self.p;
            }
            out as Elt
        }
    }

    fn neg_raw(&self, a: Elt) -> Elt {
        if self.e == 1 {
            ((self.p - a as u64) % self.p) as Elt
        } else {
            let mut a = a as u64;
            let mut out = 0u64;
            let mut mult = 1u64;
            while a > 0 {
                out += ((self.p - a % self.p) % self.p) * mult;
                a /= self.p;
                mult *= self.p;
            }
            out as Elt
        }
    }

    fn mul_raw(&self, a: Elt, b: Elt) -> Elt {
        if self.e == 1 {
            ((a as u64 * b as u64) % self.p) as Elt
        } else {
            let e = self.e as usize;
            let mut da = vec![0u64; e];
            let mut db = vec![0u64; e];
            let (mut x, mut y) = (a as u64, b as u64);
            for i in 0..e {
                da[i] = x % self.p;
                db[i] = y % self.p;
                x /= self.p;
                y /= self.p;
            }
            let mut prod = vec![0u64; 2 * e - 1];
            for i in 0..e {
                if da[i] == 0 {
                    continue;
                }
                for j in 0..e {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
                }
            }
            // reduce modulo the modulus polynomial
            for i in (e..2 * e - 1).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                prod[i] = 0;
                for (j, &mc) in self.modulus.iter().take(e).enumerate() {
                    let idx = i - e + j;
                    prod[idx] = (prod[idx] + (self.p - mc as u64 % self.p) * c) % self.p;
                }
            }
            let mut out = 0u64;
            for i in (0..e).rev() {
                out = out * self.p + prod[i];
            }
            out as Elt
        }
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        match &self.add_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.add_raw(a, b),
        }
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Elt) -> Elt {
        self.neg_table[a as usize]
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        match &self.mul_table {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.mul_raw(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero (all call sites pivot on
    /// nonzero entries).
    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != 0, "division by zero field element");
        self.inv_table[a as usize]
    }

    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elt, mut n: u64) -> Elt {
        let mut base = a;
        let mut acc: Elt = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    fn element_order(&self, a: Elt) -> u64 {
        debug_assert!(a != 0);
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// All elements in canonical index order `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        (0..self.q as u32).map(|i| i as Elt)
    }

    /// Evaluation-point order used by Reed-Solomon codes:
    /// `0, 1, g, g^2, ..., g^{q-2}` for the canonical primitive element `g`.
    pub fn evaluation_points(&self) -> Vec<Elt> {
        let mut pts = Vec::with_capacity(self.q as usize);
        pts.push(0);
        let mut x: Elt = 1;
        for _ in 0..self.q - 1 {
            pts.push(x);
            x = self.mul(x, self.primitive);
        }
        pts
    }

    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    fn verify_axioms(&self) -> Result<()> {
        let q = self.q as usize;
        for a in 0..q as u32 {
            let a = a as Elt;
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(Error::TheoryViolation("field identity axiom failed".into()));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::TheoryViolation("field negation axiom failed".into()));
            }
            if a != 0 && self.mul(a, self.inv_table[a as usize]) != 1 {
                return Err(Error::TheoryViolation("field inverse axiom failed".into()));
            }
        }
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                let (a, b) = (a as Elt, b as Elt);
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::TheoryViolation("field commutativity failed".into()));
                }
            }
        }
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                for c in 0..q as u32 {
                    let (a, b, c) = (a as Elt, b as Elt, c as Elt);
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::TheoryViolation("addition not associative".into()));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::TheoryViolation("multiplication not associative".into()));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::TheoryViolation("distributivity failed".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

/// Constructs `GF(p^e)` with the canonical modulus and verified axioms.
///
/// Fields of order at most 256 are backed by full add/mul tables and checked
/// exhaustively (associativity and distributivity over all triples); larger
/// fields compute on the fly and verify the cheap axioms only.
pub fn field_create(p: u64, e: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if e == 0 {
        return Err(Error::Parse("extension degree must be positive".into()));
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= FIELD_ORDER_CAP)
        .ok_or(Error::FieldCap {
            order: p.saturating_pow(e),
            cap: FIELD_ORDER_CAP,
        })?;
    let modulus = if e > 1 {
        let m = canonical_irreducible(p, e)?;
        if !poly_is_irreducible(&m, p) {
            return Err(Error::TheoryViolation(format!(
                "canonical polynomial for ({p},{e}) is reducible"
            )));
        }
        m
    } else {
        Vec::new()
    };

    let mut field = FiniteField {
        p,
        e,
        q,
        modulus,
        add_table: None,
        mul_table: None,
        inv_table: Vec::new(),
        neg_table: Vec::new(),
        primitive: 0,
    };

    field.neg_table = (0..q as u32).map(|a| field.neg_raw(a as Elt)).collect();
    if q <= EXHAUSTIVE_CHECK_CAP {
        let n = q as usize;
        let mut add = vec![0 as Elt; n * n];
        let mut mul = vec![0 as Elt; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = field.add_raw(a as Elt, b as Elt);
                mul[a * n + b] = field.mul_raw(a as Elt, b as Elt);
            }
        }
        field.add_table = Some(add);
        field.mul_table = Some(mul);
    }

    // inverses by exponentiation: a^(q-2)
    let mut inv = vec![0 as Elt; q as usize];
    for a in 1..q as u32 {
        inv[a as usize] = field.pow(a as Elt, q - 2);
    }
    field.inv_table = inv;

    if q <= EXHAUSTIVE_CHECK_CAP {
        field.verify_axioms()?;
    } else {
        for a in 1..q as u32 {
            if field.mul(a as Elt, field.inv_table[a as usize]) != 1 {
                return Err(Error::TheoryViolation("field inverse axiom failed".into()));
            }
        }
    }

    // canonical primitive element: smallest index of full multiplicative order
    let mut primitive = 1 as Elt;
    if q > 2 {
        let mut found = false;
        for a in 2..q as u32 {
            if field.element_order(a as Elt) == q - 1 {
                primitive = a as Elt;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::TheoryViolation("no primitive element found".into()));
        }
    }
    field.primitive = primitive;

    Ok(Arc::new(field))
}

/// Constructs the field of the given prime-power order.
pub fn field_of_order(q: u64) -> Result<Field> {
    let (p, e) = factor_prime_power(q)?;
    field_create(p, e)
}

/// Renders an element index as a single base-36 digit (`0-9a-z`); the text
/// code and word formats rely on it, so only fields with `q <= 36` can be
/// serialized.
pub fn elt_to_char(a: Elt) -> Result<char> {
    std::char::from_digit(a as u32, 36)
        .ok_or_else(|| Error::Parse(format!("element {a} too large for digit encoding (q > 36)")))
}

pub fn elt_from_char(c: char) -> Result<Elt> {
    c.to_digit(36)
        .map(|d| d as Elt)
        .ok_or_else(|| Error::Parse(format!("invalid element digit {c:?}")))
}
