//! `F_q`-subspaces of `F_{q^n}` in canonical reduced row echelon form.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Default cap on `q^k` for explicit element enumeration.
pub const DEFAULT_ELEMENT_CAP: u128 = 1 << 20;
/// Default cap on the number of subspaces a Grassmannian stream may yield.
pub const DEFAULT_GRASSMANNIAN_CAP: u128 = 1_000_000;

/// Row reduction over `Z_p`. Returns the rows of the reduced row echelon form,
/// zero rows removed, pivots strictly increasing left to right.
pub(crate) fn row_reduce(ctx: &FieldContext, mut rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let p = ctx.p() as u32;
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = ctx.base_inverse(rows[rank][col]) as u32;
        if inv != 1 {
            for c in rows[rank][col..].iter_mut() {
                *c = (*c as u32 * inv % p) as u8;
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let c = row[col] as u32;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = ((*x as u32 + neg * y as u32) % p) as u8;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Rank by forward elimination only.
pub(crate) fn rank_of(ctx: &FieldContext, mut rows: Vec<Vec<u8>>) -> usize {
    let p = ctx.p() as u32;
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = ctx.base_inverse(rows[rank][col]) as u32;
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let c = row[col] as u32 * inv % p;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = ((*x as u32 + neg * y as u32) % p) as u8;
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone)]
pub struct Subspace {
    ctx: Arc<FieldContext>,
    rows: Vec<FieldElement>,
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries(self.rows.iter().map(|r| r.coeffs()))
            .finish()
    }
}

// Equality, hashing and ordering look at the canonical basis only; comparing
// subspaces of different fields is a caller error.
impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

fn same_field(a: &Arc<FieldContext>, b: &Arc<FieldContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Subspace {
    pub fn zero(ctx: &Arc<FieldContext>) -> Subspace {
        Subspace {
            ctx: Arc::clone(ctx),
            rows: Vec::new(),
        }
    }

    /// `F_q`-span of the generators.
    pub fn span(ctx: &Arc<FieldContext>, gens: &[FieldElement]) -> Result<Subspace> {
        for g in gens {
            ctx.check(g)?;
        }
        Ok(Self::span_unchecked(
            ctx,
            gens.iter().map(|g| g.coeffs().to_vec()).collect(),
        ))
    }

    pub(crate) fn span_unchecked(ctx: &Arc<FieldContext>, rows: Vec<Vec<u8>>) -> Subspace {
        let rows = row_reduce(ctx, rows)
            .into_iter()
            .map(FieldElement::from_raw)
            .collect();
        Subspace {
            ctx: Arc::clone(ctx),
            rows,
        }
    }

    /// The subfield `F_{q^t}` as an `F_q`-subspace, spanned by `1, g, ..., g^(t-1)`
    /// for a generator `g` of `F_{q^t}^*`.
    pub fn subfield(ctx: &Arc<FieldContext>, t: usize) -> Result<Subspace> {
        if t == 0 || !ctx.n().is_multiple_of(t) {
            return Err(Error::NonDivisorDegree {
                t: t as u64,
                n: ctx.n() as u64,
            });
        }
        let g = ctx.subfield_unit(t);
        let mut gens = vec![ctx.one()];
        for _ in 1..t {
            let next = ctx.mul(gens.last().unwrap(), &g);
            gens.push(next);
        }
        Self::span(ctx, &gens)
    }

    /// `F_q`-span of `x · F_q[y]`, i.e. of `x, xy, ..., x y^(d-1)` with `d` the degree of `y`.
    pub fn scaled_subfield_block(
        ctx: &Arc<FieldContext>,
        x: &FieldElement,
        y: &FieldElement,
    ) -> Result<Subspace> {
        ctx.check(x)?;
        ctx.check(y)?;
        let d = ctx.element_degree(y);
        let mut gens = vec![x.clone()];
        for _ in 1..d {
            let next = ctx.mul(gens.last().unwrap(), y);
            gens.push(next);
        }
        Self::span(ctx, &gens)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[FieldElement] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    fn same_context(&self, other: &Subspace) -> Result<()> {
        if same_field(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    fn raw_rows(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        self.rows.iter().map(|r| r.coeffs().to_vec())
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool> {
        self.ctx.check(x)?;
        let p = self.ctx.p() as u32;
        let mut v: Vec<u8> = x.coeffs().to_vec();
        for row in &self.rows {
            let row = row.coeffs();
            let pivot = row.iter().position(|&c| c != 0).unwrap();
            let c = v[pivot] as u32;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (a, &b) in v.iter_mut().zip(row) {
                *a = ((*a as u32 + neg * b as u32) % p) as u8;
            }
        }
        Ok(v.iter().all(|&c| c == 0))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_context(other)?;
        let rows = self.raw_rows().chain(other.raw_rows()).collect();
        Ok(Self::span_unchecked(&self.ctx, rows))
    }

    /// `dim(U + V)` without building the canonical basis.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.same_context(other)?;
        Ok(rank_of(
            &self.ctx,
            self.raw_rows().chain(other.raw_rows()).collect(),
        ))
    }

    /// `U ∩ V` by reducing the stacked block matrix `[U | U; V | 0]`: rows whose
    /// left half vanishes carry a basis of the intersection in the right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(&self.ctx));
        }
        let n = self.ctx.n();
        let mut stacked = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut row = r.coeffs().to_vec();
            row.extend_from_slice(r.coeffs());
            stacked.push(row);
        }
        for r in &other.rows {
            let mut row = r.coeffs().to_vec();
            row.resize(2 * n, 0);
            stacked.push(row);
        }
        let reduced = row_reduce(&self.ctx, stacked);
        let inter = reduced
            .into_iter()
            .filter(|row| row[..n].iter().all(|&c| c == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        Ok(Self::span_unchecked(&self.ctx, inter))
    }

    /// `dim(U ∩ V) = dim U + dim V - dim(U + V)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// The cyclic shift `xU`.
    pub fn scale(&self, x: &FieldElement) -> Result<Subspace> {
        self.ctx.check(x)?;
        if x.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| self.ctx.mul(x, r).into_raw())
            .collect();
        Ok(Self::span_unchecked(&self.ctx, rows))
    }

    /// Subspace distance `dim U + dim V - 2 dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let s = self.sum_dim(other)?;
        Ok(2 * s - self.dim() - other.dim())
    }

    pub fn enumerate_elements(&self) -> Result<Vec<FieldElement>> {
        self.enumerate_elements_capped(DEFAULT_ELEMENT_CAP)
    }

    /// All `q^k` elements, zero first, in lexicographic order of their
    /// coordinates with respect to the canonical basis.
    pub fn enumerate_elements_capped(&self, cap: u128) -> Result<Vec<FieldElement>> {
        let q = self.ctx.q();
        let k = self.dim() as u32;
        let total = arith::checked_pow(q, k).unwrap_or(u128::MAX);
        if total > cap {
            return Err(Error::EnumerationTooLarge {
                requested: total,
                cap,
            });
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut digits = vec![0u8; self.dim()];
        for _ in 0..total {
            let mut acc = self.ctx.zero();
            for (d, row) in digits.iter().zip(&self.rows) {
                if *d != 0 {
                    acc = self.ctx.add(&acc, &self.ctx.scalar_mul(*d, row));
                }
            }
            out.push(acc);
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d as u64 == q {
                    *d = 0;
                } else {
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// Pivot pattern of a `k`-subspace: sorted pivot columns.
fn free_cells(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (i, &c) in pivots.iter().enumerate() {
        for j in c + 1..n {
            if !pivots.contains(&j) {
                cells.push((i, j));
            }
        }
    }
    cells
}

/// Number of `k`-dimensional subspaces, the Gaussian binomial.
pub fn grassmannian_count(q: u64, n: usize, k: usize) -> Option<u128> {
    arith::q_binomial(q, n as u32, k as u32)
}

/// Pivot columns and the free `(row, column)` cells they leave.
type PivotPattern = (Vec<usize>, Vec<(usize, usize)>);

/// Stream of every `k`-subspace exactly once, ordered by pivot pattern and then
/// by the values of the free cells.
pub struct Grassmannian {
    ctx: Arc<FieldContext>,
    k: usize,
    patterns: Box<dyn Iterator<Item = Vec<usize>> + Send>,
    /// Pattern being filled and the current free-cell values.
    current: Option<(PivotPattern, Vec<u8>)>,
    exhausted: bool,
}

pub fn grassmannian(ctx: &Arc<FieldContext>, k: usize) -> Result<Grassmannian> {
    grassmannian_capped(ctx, k, DEFAULT_GRASSMANNIAN_CAP)
}

pub fn grassmannian_capped(ctx: &Arc<FieldContext>, k: usize, cap: u128) -> Result<Grassmannian> {
    let n = ctx.n();
    if k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let count = grassmannian_count(ctx.q(), n, k).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::EnumerationTooLarge {
            requested: count,
            cap,
        });
    }
    Ok(Grassmannian {
        ctx: Arc::clone(ctx),
        k,
        patterns: Box::new((0..n).combinations(k)),
        current: None,
        exhausted: false,
    })
}

impl Grassmannian {
    fn build(&self, pivots: &[usize], cells: &[(usize, usize)], values: &[u8]) -> Subspace {
        let n = self.ctx.n();
        let mut rows = vec![vec![0u8; n]; self.k];
        for (i, &c) in pivots.iter().enumerate() {
            rows[i][c] = 1;
        }
        for (&(i, j), &v) in cells.iter().zip(values) {
            rows[i][j] = v;
        }
        Subspace {
            ctx: Arc::clone(&self.ctx),
            rows: rows.into_iter().map(FieldElement::from_raw).collect(),
        }
    }
}

impl Iterator for Grassmannian {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.exhausted {
            return None;
        }
        if self.current.is_none() {
            // combinations(0) yields one empty pattern
            let pivots = self.patterns.next()?;
            let cells = free_cells(self.ctx.n(), &pivots);
            let values = vec![0u8; cells.len()];
            self.current = Some(((pivots, cells), values));
        }
        let ((pivots, cells), values) = self.current.as_ref().unwrap();
        let out = self.build(pivots, cells, values);
        let q = self.ctx.q() as u8;
        let (_, values) = self.current.as_mut().unwrap();
        let mut carried = true;
        for v in values.iter_mut().rev() {
            *v += 1;
            if *v == q {
                *v = 0;
            } else {
                carried = false;
                break;
            }
        }
        if carried {
            self.current = None;
        }
        Some(out)
    }
}

/// Uniform sample from `G_q(n, k)`: pick a pivot pattern with probability
/// proportional to `q^(free cells)`, then fill the free cells uniformly.
pub fn random_subspace<R: Rng + ?Sized>(
    ctx: &Arc<FieldContext>,
    k: usize,
    rng: &mut R,
) -> Result<Subspace> {
    let n = ctx.n();
    if k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let q = ctx.q();
    let patterns: Vec<PivotPattern> = (0..n)
        .combinations(k)
        .map(|piv| {
            let cells = free_cells(n, &piv);
            (piv, cells)
        })
        .collect();
    let weights: Vec<u128> = patterns
        .iter()
        .map(|(_, cells)| arith::pow128(q, cells.len() as u32))
        .collect();
    let total: u128 = weights.iter().sum();
    let mut pick = rng.gen_range(0..total);
    let mut chosen = 0;
    for (i, w) in weights.iter().enumerate() {
        if pick < *w {
            chosen = i;
            break;
        }
        pick -= w;
    }
    let (pivots, cells) = &patterns[chosen];
    let mut rows = vec![vec![0u8; n]; k];
    for (i, &c) in pivots.iter().enumerate() {
        rows[i][c] = 1;
    }
    for &(i, j) in cells {
        rows[i][j] = rng.gen_range(0..q) as u8;
    }
    Ok(Subspace {
        ctx: Arc::clone(ctx),
        rows: rows.into_iter().map(FieldElement::from_raw).collect(),
    })
}

/// Uniform nonzero field element.
pub fn random_nonzero<R: Rng + ?Sized>(ctx: &FieldContext, rng: &mut R) -> FieldElement {
    let size = ctx.group_order() + 1;
    ctx.from_index(rng.gen_range(1..size))
}
