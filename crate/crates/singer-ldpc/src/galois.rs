//! Exact arithmetic in GF(p^e) and in extension towers GF(q^n)/GF(q).
//!
//! Elements are stored packed: the polynomial-basis coefficient vector
//! (c_0, ..., c_{e-1}) over GF(p) becomes the integer sum c_i * p^i. All
//! multiplicative structure goes through eagerly built log/antilog tables,
//! which is why field orders are capped by a size guard.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on field order (and tower top-field order).
pub const DEFAULT_SIZE_GUARD: u64 = 1 << 20;

static NEXT_FIELD_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a [`Field`], tagged with the identity of its owning field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldElement {
    field: u64,
    packed: u32,
}

impl FieldElement {
    /// Packed integer representation: sum of c_i * p^i over the coefficient
    /// vector. Zero is 0, and packed values order elements canonically.
    pub fn packed(self) -> u32 {
        self.packed
    }

    pub fn is_zero(self) -> bool {
        self.packed == 0
    }
}

/// A finite field GF(p^e) with a primitive modulus and log/antilog tables.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
    id: u64,
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiply the packed polynomial by x and reduce mod the monic `modulus`
/// (length e+1, constant term first). Digit arithmetic base p.
fn mul_by_x(packed: u32, p: u64, e: u32, modulus: &[u64]) -> u32 {
    let e = e as usize;
    // shift up while unpacking: digit i of packed becomes digit i+1
    let mut shifted = vec![0u64; e + 1];
    let mut v = packed as u64;
    for i in 0..e {
        shifted[i + 1] = v % p;
        v /= p;
    }
    let lead = shifted[e];
    if lead != 0 {
        for i in 0..=e {
            shifted[i] = (shifted[i] + lead * (p - modulus[i] % p) % p) % p;
        }
    }
    debug_assert_eq!(shifted[e], 0);
    let mut out = 0u64;
    for i in (0..e).rev() {
        out = out * p + shifted[i];
    }
    out as u32
}

/// Build the antilog table for the root of `modulus`. Returns `Some` iff the
/// root has multiplicative order exactly q-1, which also certifies the
/// modulus irreducible (the q-1 distinct powers exhaust the nonzero
/// residues, so every nonzero residue is a unit).
fn build_exp_table(p: u64, e: u32, modulus: &[u64]) -> Option<Vec<u32>> {
    let q = p.pow(e);
    let mut exp = Vec::with_capacity((q - 1) as usize);
    let mut cur = 1u32;
    for k in 0..q - 1 {
        exp.push(cur);
        cur = mul_by_x(cur, p, e, modulus);
        if cur == 0 {
            return None;
        }
        if cur == 1 {
            return if k + 1 == q - 1 { Some(exp) } else { None };
        }
    }
    None
}

impl Field {
    /// Construct GF(p^e). When `modulus` is omitted the lexicographically
    /// smallest primitive monic polynomial is selected, comparing
    /// coefficients from the constant term upward.
    pub fn create(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Field> {
        Self::create_guarded(p, e, modulus, DEFAULT_SIZE_GUARD)
    }

    pub(crate) fn create_guarded(
        p: u64,
        e: u32,
        modulus: Option<&[u64]>,
        guard: u64,
    ) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::MalformedModulus("degree must be at least 1".into()));
        }
        let q = (p as u128).pow(e);
        if q > guard as u128 {
            return Err(Error::SizeGuardExceeded {
                order: q.min(u64::MAX as u128) as u64,
                guard,
            });
        }
        let q = q as u64;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 {
                    return Err(Error::MalformedModulus(format!(
                        "expected monic of degree {e}, got coefficients {m:?}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedModulus(format!(
                        "coefficients must lie in [0, {p})"
                    )));
                }
                m.to_vec()
            }
            None => Self::smallest_primitive_modulus(p, e)?,
        };

        let exp = build_exp_table(p, e, &modulus).ok_or(Error::NonPrimitiveModulus { p })?;
        let mut log = vec![u32::MAX; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        Ok(Field {
            p,
            e,
            q,
            modulus,
            exp,
            log,
            id: NEXT_FIELD_ID.fetch_add(1, Ordering::Relaxed),
        })
    }

    fn smallest_primitive_modulus(p: u64, e: u32) -> Result<Vec<u64>> {
        // odometer over (c_0, ..., c_{e-1}) with c_{e-1} moving fastest, so
        // the first hit is the lexicographic minimum from the constant term up
        let e = e as usize;
        let mut coeffs = vec![0u64; e + 1];
        coeffs[e] = 1;
        loop {
            if build_exp_table(p, e as u32, &coeffs).is_some() {
                return Ok(coeffs);
            }
            let mut i = e;
            loop {
                if i == 0 {
                    return Err(Error::NonPrimitiveModulus { p });
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Field order p^e.
    pub fn order(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first, length degree+1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The root of the modulus, a generator of the multiplicative group.
    pub fn alpha(&self) -> FieldElement {
        self.element(self.exp[1 % self.exp.len()])
    }

    pub(crate) fn element(&self, packed: u32) -> FieldElement {
        debug_assert!((packed as u64) < self.q);
        FieldElement {
            field: self.id,
            packed,
        }
    }

    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.e as usize {
            return Err(Error::MalformedModulus(format!(
                "coefficient vector longer than degree {}",
                self.e
            )));
        }
        let mut packed = 0u64;
        for &c in coeffs.iter().rev() {
            packed = packed * self.p + c % self.p;
        }
        Ok(self.element(packed as u32))
    }

    /// Coefficient vector of `x`, constant term first, length = degree.
    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u64>> {
        self.check(x)?;
        let mut v = x.packed as u64;
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        Ok(out)
    }

    fn check(&self, x: FieldElement) -> Result<()> {
        if x.field != self.id {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    // packed-level arithmetic used by the rest of the crate

    pub(crate) fn padd(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.e {
            out += (a % self.p + b % self.p) % self.p * mult;
            a /= self.p;
            b /= self.p;
            mult *= self.p;
        }
        out as u32
    }

    pub(crate) fn pneg(&self, a: u32) -> u32 {
        let mut a = a as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.e {
            out += (self.p - a % self.p) % self.p * mult;
            a /= self.p;
            mult *= self.p;
        }
        out as u32
    }

    pub(crate) fn pmul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(k % (self.q - 1)) as usize]
    }

    pub(crate) fn pinv(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        let k = self.log[a as usize] as u64;
        self.exp[((self.q - 1 - k) % (self.q - 1)) as usize]
    }

    pub(crate) fn plog(&self, a: u32) -> u64 {
        debug_assert_ne!(a, 0);
        self.log[a as usize] as u64
    }

    pub(crate) fn pexp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q - 1)) as usize]
    }

    // checked element-level API

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(self.padd(a.packed, b.packed)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(self.padd(a.packed, self.pneg(b.packed))))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(self.pmul(a.packed, b.packed)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.packed == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.element(self.pinv(a.packed)))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> Result<FieldElement> {
        self.check(a)?;
        if a.packed == 0 {
            return Ok(if k == 0 { self.one() } else { self.zero() });
        }
        let k = (self.plog(a.packed) as u128 * k as u128 % (self.q - 1) as u128) as u64;
        Ok(self.element(self.pexp(k)))
    }

    /// The exponent k with alpha^k = x, in [0, order-2].
    pub fn discrete_log(&self, x: FieldElement) -> Result<u64> {
        self.check(x)?;
        if x.packed == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.plog(x.packed))
    }

    /// alpha^k; inverse of [`Field::discrete_log`].
    pub fn exp(&self, k: u64) -> FieldElement {
        self.element(self.pexp(k))
    }
}

/// The extension tower GF(q^n) over GF(q) over GF(p).
///
/// The top field is represented over the prime field; the copy of GF(q)
/// inside it is generated by alpha^theta with theta = (q^n-1)/(q-1).
/// Coordinates of top-field elements over the basis {1, alpha, ...,
/// alpha^{n-1}} have entries in that subfield, so every computation in the
/// tower stays inside top-field arithmetic.
#[derive(Debug)]
pub struct Tower {
    base: Field,
    top: Field,
    n: u32,
    theta: u64,
    subfield_exponents: Vec<(u32, u64)>,
    subfield_scalars: Vec<u32>,
    delta: u32,
    coord_inv: Vec<Vec<u64>>,
}

impl Tower {
    pub fn create(base: Field, n: u32) -> Result<Tower> {
        Self::create_guarded(base, n, DEFAULT_SIZE_GUARD)
    }

    pub fn create_guarded(base: Field, n: u32, guard: u64) -> Result<Tower> {
        if n < 2 {
            return Err(Error::MalformedModulus(
                "tower degree must be at least 2".into(),
            ));
        }
        let p = base.p();
        let e = base.degree();
        let q = base.order();
        let top = Field::create_guarded(p, e * n, None, guard)?;
        let qn = top.order();
        let theta = (qn - 1) / (q - 1);

        let mut subfield_exponents = Vec::new();
        for t in 1..=n {
            if n % t == 0 {
                subfield_exponents.push((t, (qn - 1) / (q.pow(t) - 1)));
            }
        }

        // all q scalars of the GF(q) copy inside the top field:
        // index 0 is zero, index j >= 1 is delta^{j-1} with delta = alpha^theta
        let mut subfield_scalars = Vec::with_capacity(q as usize);
        subfield_scalars.push(0);
        for k in 0..q - 1 {
            subfield_scalars.push(top.pexp(theta * k));
        }
        let delta = top.pexp(theta);

        let coord_inv = Self::coordinate_inverse(&top, delta, p, e, n)?;

        Ok(Tower {
            base,
            top,
            n,
            theta,
            subfield_exponents,
            subfield_scalars,
            delta,
            coord_inv,
        })
    }

    /// Inverse of the GF(p)-matrix whose columns are the packed digit
    /// vectors of alpha^i * delta^j (column index i*e + j).
    fn coordinate_inverse(
        top: &Field,
        delta: u32,
        p: u64,
        e: u32,
        n: u32,
    ) -> Result<Vec<Vec<u64>>> {
        let dim = (e * n) as usize;
        let mut cols = Vec::with_capacity(dim);
        for i in 0..n as usize {
            let ai = top.pexp(i as u64);
            let mut dj = 1u32; // delta^0
            for _ in 0..e as usize {
                cols.push(top.pmul(ai, dj));
                dj = top.pmul(dj, delta);
            }
        }
        // build augmented [M | I] row-major and run Gauss-Jordan mod p
        let mut m = vec![vec![0u64; 2 * dim]; dim];
        for (c, &packed) in cols.iter().enumerate() {
            let mut v = packed as u64;
            for r in 0..dim {
                m[r][c] = v % p;
                v /= p;
            }
        }
        for r in 0..dim {
            m[r][dim + r] = 1;
        }
        for col in 0..dim {
            let pivot = (col..dim)
                .find(|&r| m[r][col] != 0)
                .expect("coordinate basis is invertible");
            m.swap(col, pivot);
            let inv = mod_inverse(m[col][col], p);
            for x in m[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..dim {
                if r != col && m[r][col] != 0 {
                    let f = m[r][col];
                    for c2 in 0..2 * dim {
                        let sub = f * m[col][c2] % p;
                        m[r][c2] = (m[r][c2] + p - sub) % p;
                    }
                }
            }
        }
        Ok(m.into_iter()
            .map(|row| row[dim..].to_vec())
            .collect::<Vec<_>>())
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Point count of PG(n-1,q): (q^n - 1)/(q - 1).
    pub fn theta(&self) -> u64 {
        self.theta
    }

    pub fn q(&self) -> u64 {
        self.base.order()
    }

    /// The exponent (q^n-1)/(q^t-1) for a divisor t of n; alpha to this
    /// power generates the multiplicative group of the subfield GF(q^t).
    pub fn subfield_exponent(&self, t: u32) -> Result<u64> {
        self.subfield_exponents
            .iter()
            .find(|&&(tt, _)| tt == t)
            .map(|&(_, x)| x)
            .ok_or(Error::NonDivisorRank { t, n: self.n })
    }

    pub fn subfield_exponents(&self) -> &[(u32, u64)] {
        &self.subfield_exponents
    }

    /// Generator of GF(q^t)^* inside the top field.
    pub fn subfield_generator(&self, t: u32) -> Result<FieldElement> {
        Ok(self.top.exp(self.subfield_exponent(t)?))
    }

    /// The k-th scalar of the GF(q) copy inside the top field: 0 for k = 0,
    /// otherwise delta^{k-1}. Enumerates all of GF(q) as k runs over [0, q).
    pub fn subfield_scalar(&self, k: u64) -> Result<FieldElement> {
        self.subfield_scalars
            .get(k as usize)
            .map(|&x| self.top.element(x))
            .ok_or(Error::InvalidFieldOrder(k))
    }

    pub(crate) fn scalars(&self) -> &[u32] {
        &self.subfield_scalars
    }

    pub(crate) fn is_subfield_scalar(&self, packed: u32) -> bool {
        packed == 0 || self.top.plog(packed) % self.theta == 0
    }

    /// Coordinates of `x` over the basis {1, alpha, ..., alpha^{n-1}} with
    /// entries in the GF(q) copy inside the top field.
    pub fn to_vector(&self, x: FieldElement) -> Result<Vec<FieldElement>> {
        if x.field != self.top.id {
            return Err(Error::FieldMismatch);
        }
        Ok(self
            .pto_vector(x.packed)
            .into_iter()
            .map(|v| self.top.element(v))
            .collect())
    }

    pub(crate) fn pto_vector(&self, x: u32) -> Vec<u32> {
        let p = self.top.p();
        let e = self.base.degree() as usize;
        let dim = self.coord_inv.len();
        let mut digits = vec![0u64; dim];
        let mut v = x as u64;
        for d in digits.iter_mut() {
            *d = v % p;
            v /= p;
        }
        let mut out = Vec::with_capacity(self.n as usize);
        let delta = self.delta;
        for i in 0..self.n as usize {
            let mut acc = 0u32;
            let mut dj = 1u32;
            for j in 0..e {
                let mut c = 0u64;
                let row = &self.coord_inv[i * e + j];
                for (col, &d) in digits.iter().enumerate() {
                    c = (c + row[col] * d) % p;
                }
                // c is a prime-field scalar, i.e. the constant polynomial c
                acc = self.top.padd(acc, self.top.pmul(c as u32, dj));
                dj = self.top.pmul(dj, delta);
            }
            out.push(acc);
        }
        out
    }

    /// Inverse of [`Tower::to_vector`]: sum of v_i * alpha^i.
    pub fn from_vector(&self, v: &[FieldElement]) -> Result<FieldElement> {
        if v.len() != self.n as usize {
            return Err(Error::LengthMismatch {
                expected: self.n as usize,
                got: v.len(),
            });
        }
        let mut packed = Vec::with_capacity(v.len());
        for &x in v {
            if x.field != self.top.id {
                return Err(Error::FieldMismatch);
            }
            if !self.is_subfield_scalar(x.packed) {
                return Err(Error::FieldMismatch);
            }
            packed.push(x.packed);
        }
        Ok(self.top.element(self.pfrom_vector(&packed)))
    }

    pub(crate) fn pfrom_vector(&self, v: &[u32]) -> u32 {
        let mut acc = 0u32;
        for (i, &c) in v.iter().enumerate() {
            acc = self.top.padd(acc, self.top.pmul(c, self.top.pexp(i as u64)));
        }
        acc
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime; Fermat
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}
