//! Arithmetic in `F_{p^n} = F_p[x]/(f)` for a prime `p` and a monic irreducible `f`.
//!
//! Elements live in the power basis `1, α, ..., α^(n-1)` where `α` is the
//! residue class of `x`, so the coefficient vector of an element is also its
//! coordinate vector over `F_p`. Subspace code machinery relies on that.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly;

/// Largest supported characteristic; coefficients are stored as bytes.
pub const MAX_CHARACTERISTIC: u64 = 251;

/// Fields with at most this many nonzero elements get a full discrete-log table.
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 20;

const MAX_GROUP_ORDER: u64 = 1 << 63;

/// One element of the ambient field as `n` coefficients in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(Vec<u8>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub(crate) fn from_raw(coeffs: Vec<u8>) -> Self {
        FieldElement(coeffs)
    }

    pub(crate) fn into_raw(self) -> Vec<u8> {
        self.0
    }
}

#[derive(Debug, Clone)]
pub struct FieldContext {
    p: u32,
    n: usize,
    modulus: Vec<u8>,
    group_order: u64,
    factorization: Vec<(u64, u32)>,
    alpha_primitive: bool,
    primitive: FieldElement,
    base_inverse: Vec<u8>,
    dlog_table: Option<Vec<u32>>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    pub fn new(p: u64, n: usize, modulus: &[u64]) -> Result<Self> {
        Self::with_table_threshold(p, n, modulus, DEFAULT_TABLE_THRESHOLD)
    }

    pub fn with_table_threshold(
        p: u64,
        n: usize,
        modulus: &[u64],
        table_threshold: u64,
    ) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if modulus.len() != n + 1 || modulus[n] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::NonMonicOrWrongDegree { expected: n });
        }
        let order = u32::try_from(n)
            .ok()
            .and_then(|e| arith::checked_pow(p, e))
            .map(|size| size - 1)
            .filter(|&o| o <= MAX_GROUP_ORDER as u128)
            .ok_or(Error::GroupOrderTooLarge)? as u64;

        let p32 = p as u32;
        let base_inverse = (0..p32)
            .map(|c| {
                if c == 0 {
                    0
                } else {
                    poly::inv_mod(c, p32) as u8
                }
            })
            .collect();
        let mut ctx = FieldContext {
            p: p32,
            n,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            group_order: order,
            factorization: Vec::new(),
            alpha_primitive: false,
            primitive: FieldElement(Vec::new()),
            base_inverse,
            dlog_table: None,
        };
        if !ctx.modulus_is_irreducible() {
            return Err(Error::ReducibleModulus);
        }
        ctx.factorization = arith::factor(order);
        let alpha = ctx.alpha();
        ctx.alpha_primitive = ctx.is_primitive(&alpha);
        ctx.primitive = if ctx.alpha_primitive {
            alpha
        } else {
            (1..=order)
                .map(|i| ctx.from_index(i))
                .find(|x| ctx.is_primitive(x))
                .expect("a finite field has a primitive element")
        };
        if ctx.alpha_primitive && order <= table_threshold.min(u32::MAX as u64 - 1) {
            ctx.dlog_table = Some(ctx.build_table());
        }
        Ok(ctx)
    }

    /// Lexicographically first monic modulus (by ascending coefficients read
    /// from the top) whose root is primitive.
    pub fn find_primitive_modulus(p: u64, n: usize) -> Result<Vec<u64>> {
        if !arith::is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let total = u32::try_from(n)
            .ok()
            .and_then(|e| arith::checked_pow(p, e))
            .ok_or(Error::GroupOrderTooLarge)?;
        for code in 0..total {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut c = code;
            for _ in 0..n {
                coeffs.push((c % p as u128) as u64);
                c /= p as u128;
            }
            if coeffs[0] == 0 {
                continue;
            }
            coeffs.push(1);
            match FieldContext::with_table_threshold(p, n, &coeffs, 0) {
                Ok(ctx) if ctx.alpha_is_primitive() => return Ok(coeffs),
                Ok(_) | Err(Error::ReducibleModulus) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::ReducibleModulus)
    }

    // Rabin: f is irreducible iff x^(p^n) = x mod f and
    // gcd(x^(p^(n/r)) - x, f) = 1 for each prime r | n.
    fn modulus_is_irreducible(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        let x = self.alpha();
        let mut frob = vec![x.clone()];
        for _ in 0..self.n {
            let next = self.frobenius(frob.last().unwrap());
            frob.push(next);
        }
        if frob[self.n] != x {
            return false;
        }
        let f: Vec<u32> = self.modulus.iter().map(|&c| c as u32).collect();
        arith::factor(self.n as u64).into_iter().all(|(r, _)| {
            let h = &frob[self.n / r as usize];
            let h: Vec<u32> = h.0.iter().map(|&c| c as u32).collect();
            let x_poly = [0u32, 1];
            let diff = poly::sub(&h, &x_poly, self.p);
            poly::gcd(&diff, &f, self.p).len() == 1
        })
    }

    fn build_table(&self) -> Vec<u32> {
        let size = self.group_order as usize + 1;
        let mut table = vec![u32::MAX; size];
        let mut cur = self.one();
        for i in 0..self.group_order {
            table[self.index_of(&cur) as usize] = i as u32;
            cur = self.mul(&cur, &self.primitive);
        }
        table
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// Size of the base field; equal to the characteristic here.
    pub fn q(&self) -> u64 {
        self.p as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn alpha_is_primitive(&self) -> bool {
        self.alpha_primitive
    }

    /// A generator of the multiplicative group; `α` itself whenever `α` is primitive.
    pub fn primitive_element(&self) -> &FieldElement {
        &self.primitive
    }

    pub fn has_dlog_table(&self) -> bool {
        self.dlog_table.is_some()
    }

    pub fn dlog_table_len(&self) -> Option<usize> {
        self.dlog_table
            .as_ref()
            .map(|t| t.iter().filter(|&&e| e != u32::MAX).count())
    }

    /// Divisors of `n`, i.e. the degrees of all subfields.
    pub fn subfield_degrees(&self) -> Vec<u64> {
        arith::divisors(self.n as u64)
    }

    /// `q^t - 1` for `t <= n`.
    pub fn units_in_subfield(&self, t: usize) -> u64 {
        (self.p as u64).pow(t as u32) - 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.n])
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    /// Embeds a base-field residue.
    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut v = vec![0; self.n];
        v[0] = (c % self.p as u64) as u8;
        FieldElement(v)
    }

    /// The residue class of `x`.
    pub fn alpha(&self) -> FieldElement {
        if self.n == 1 {
            // x ≡ -f_0 mod (x + f_0)
            return self.from_base((self.p as u64 - self.modulus[0] as u64) % self.p as u64);
        }
        let mut v = vec![0; self.n];
        v[1] = 1;
        FieldElement(v)
    }

    /// Validated element from coefficients in ascending powers of `α`.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.n || coeffs.iter().any(|&c| c >= self.p as u64) {
            return Err(Error::MixedContexts);
        }
        Ok(FieldElement(coeffs.iter().map(|&c| c as u8).collect()))
    }

    pub fn check(&self, x: &FieldElement) -> Result<()> {
        if x.0.len() != self.n || x.0.iter().any(|&c| c as u32 >= self.p) {
            return Err(Error::MixedContexts);
        }
        Ok(())
    }

    /// Base-`p` integer encoding of an element, `0 <= index < p^n`.
    pub fn index_of(&self, x: &FieldElement) -> u64 {
        x.0.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        let mut v = vec![0; self.n];
        for c in v.iter_mut() {
            *c = (idx % self.p as u64) as u8;
            idx /= self.p as u64;
        }
        FieldElement(v)
    }

    pub(crate) fn base_inverse(&self, c: u8) -> u8 {
        self.base_inverse[c as usize]
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p as u16;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| ((x as u16 + y as u16) % p) as u8)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p as u16;
        FieldElement(a.0.iter().map(|&x| ((p - x as u16) % p) as u8).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, c: u8, a: &FieldElement) -> FieldElement {
        let p = self.p as u16;
        FieldElement(
            a.0.iter()
                .map(|&x| ((x as u16 * c as u16) % p) as u8)
                .collect(),
        )
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n;
        let p = self.p;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                prod[i + j] += ai as u32 * bj as u32;
            }
        }
        // Each cell grows by at most (p-1)^2 per reduction step it takes part in,
        // which stays far below u32::MAX for p <= 251 and n <= 63.
        for d in (n..2 * n - 1).rev() {
            let c = prod[d] % p;
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for (j, &m) in self.modulus[..n].iter().enumerate() {
                prod[d - n + j] += neg_c * m as u32;
            }
        }
        FieldElement(prod[..n].iter().map(|&c| (c % p) as u8).collect())
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.group_order - 1))
    }

    fn is_primitive(&self, x: &FieldElement) -> bool {
        !x.is_zero() && self.order_unchecked(x) == self.group_order
    }

    fn order_unchecked(&self, x: &FieldElement) -> u64 {
        let mut m = self.group_order;
        for &(r, _) in &self.factorization {
            while m.is_multiple_of(r) && self.pow(x, m / r) == self.one() {
                m /= r;
            }
        }
        m
    }

    /// Multiplicative order.
    pub fn order(&self, x: &FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.order_unchecked(x))
    }

    /// Degree of the minimal polynomial of `x` over the base field.
    pub fn element_degree(&self, x: &FieldElement) -> usize {
        let mut y = x.clone();
        for d in 1..=self.n {
            y = self.frobenius(&y);
            if &y == x {
                return d;
            }
        }
        unreachable!("x^(p^n) = x for every element")
    }

    fn check_divisor(&self, t: usize) -> Result<()> {
        if t == 0 || !self.n.is_multiple_of(t) {
            return Err(Error::NonDivisorDegree {
                t: t as u64,
                n: self.n as u64,
            });
        }
        Ok(())
    }

    /// Whether `x` lies in the subfield `F_{q^t}`.
    pub fn subfield_membership(&self, x: &FieldElement, t: usize) -> Result<bool> {
        self.check_divisor(t)?;
        let mut y = x.clone();
        for _ in 0..t {
            y = self.frobenius(&y);
        }
        Ok(&y == x)
    }

    /// `α^((q^n-1)/(q^t-1))`, a generator of `F_{q^t}^*`.
    pub fn subfield_generator(&self, t: usize) -> Result<FieldElement> {
        self.check_divisor(t)?;
        if !self.alpha_primitive {
            return Err(Error::NonPrimitiveAlpha);
        }
        Ok(self.subfield_unit(t))
    }

    /// Generator of `F_{q^t}^*` built from the stored primitive element; works
    /// whether or not `α` is primitive. `t` must divide `n`.
    pub fn subfield_unit(&self, t: usize) -> FieldElement {
        debug_assert!(t > 0 && self.n.is_multiple_of(t));
        let e = self.group_order / self.units_in_subfield(t);
        self.pow(&self.primitive, e)
    }

    /// `α^i` with `i` reduced modulo the group order.
    pub fn exp(&self, i: u64) -> Result<FieldElement> {
        if !self.alpha_primitive {
            return Err(Error::NonPrimitiveAlpha);
        }
        Ok(self.pow(&self.primitive, i % self.group_order))
    }

    /// Discrete logarithm to base `α`, in `[0, q^n - 1)`.
    pub fn dlog(&self, x: &FieldElement) -> Result<u64> {
        if !self.alpha_primitive {
            return Err(Error::NonPrimitiveAlpha);
        }
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if let Some(table) = &self.dlog_table {
            return Ok(table[self.index_of(x) as usize] as u64);
        }
        Ok(self.baby_step_giant_step(x))
    }

    fn baby_step_giant_step(&self, x: &FieldElement) -> u64 {
        let order = self.group_order;
        let m = ((order as f64).sqrt().ceil() as u64).max(1);
        let mut baby: HashMap<u64, u64> = HashMap::with_capacity(m as usize);
        let mut cur = self.one();
        for j in 0..m {
            baby.entry(self.index_of(&cur)).or_insert(j);
            cur = self.mul(&cur, &self.primitive);
        }
        // cur = α^m
        let giant = self.inv(&cur).expect("α^m is nonzero");
        let mut y = x.clone();
        for i in 0..=m {
            if let Some(&j) = baby.get(&self.index_of(&y)) {
                return (i * m + j) % order;
            }
            y = self.mul(&y, &giant);
        }
        unreachable!("every nonzero element is a power of a primitive element")
    }
}
