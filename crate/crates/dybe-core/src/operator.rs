//! Square matrices over a [`Scalar`] backend with cyclic index conventions.
//!
//! Storage is coordinate-sparse (row lists) when at most 10% of the entries
//! are nonzero and dense otherwise. Exact zeros are never stored sparsely.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
enum Store<S> {
    Dense(Vec<S>),
    Sparse(Vec<Vec<(usize, S)>>),
}

#[derive(Clone, Debug)]
pub struct Operator<S: Scalar> {
    dim: usize,
    ctx: S::Ctx,
    store: Store<S>,
}

/// Which pair of tensor legs a two-site operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    S12,
    S13,
    S23,
}

fn sparse_enough(nnz: usize, dim: usize) -> bool {
    nnz * 10 <= dim * dim
}

impl<S: Scalar> Operator<S> {
    pub fn zeros(ctx: &S::Ctx, dim: usize) -> Self {
        Self { dim, ctx: ctx.clone(), store: Store::Sparse(vec![Vec::new(); dim]) }
    }

    pub fn identity(ctx: &S::Ctx, dim: usize) -> Self {
        Self::from_entries(ctx, dim, (0..dim).map(|i| (i, i, S::one(ctx))))
    }

    /// `e_{i,j}`, indices reduced mod `dim`.
    pub fn elementary(ctx: &S::Ctx, dim: usize, i: i64, j: i64) -> Self {
        let n = dim as i64;
        Self::from_entries(ctx, dim, [(i.rem_euclid(n) as usize, j.rem_euclid(n) as usize, S::one(ctx))])
    }

    /// Sums duplicate coordinates; drops exact zeros.
    pub fn from_entries<I>(ctx: &S::Ctx, dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); dim];
        for (i, j, v) in entries {
            assert!(i < dim && j < dim, "entry ({i},{j}) outside a {dim}x{dim} operator");
            rows[i].push((j, v));
        }
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, S)> = Vec::with_capacity(r.len());
                for (j, v) in r {
                    match out.last_mut() {
                        Some((lj, lv)) if *lj == j => *lv = lv.add(&v),
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|(_, v)| !v.is_zero());
                out
            })
            .collect();
        Self::from_rows(ctx, dim, rows)
    }

    fn from_rows(ctx: &S::Ctx, dim: usize, rows: Vec<Vec<(usize, S)>>) -> Self {
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let store = if sparse_enough(nnz, dim) {
            Store::Sparse(rows)
        } else {
            let mut dense = vec![S::zero(ctx); dim * dim];
            for (i, r) in rows.into_iter().enumerate() {
                for (j, v) in r {
                    dense[i * dim + j] = v;
                }
            }
            Store::Dense(dense)
        };
        Self { dim, ctx: ctx.clone(), store }
    }

    /// Builds from a row-major function of the indices.
    pub fn from_fn(ctx: &S::Ctx, dim: usize, f: impl Fn(usize, usize) -> S + Sync) -> Self {
        let rows = (0..dim)
            .into_par_iter()
            .map(|i| (0..dim).map(|j| (j, f(i, j))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self::from_rows(ctx, dim, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.store, Store::Sparse(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.store {
            Store::Sparse(rows) => rows.iter().map(Vec::len).sum(),
            Store::Dense(v) => v.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row(&self, i: usize) -> Vec<(usize, &S)> {
        match &self.store {
            Store::Sparse(rows) => rows[i].iter().map(|(j, v)| (*j, v)).collect(),
            Store::Dense(v) => {
                v[i * self.dim..(i + 1) * self.dim].iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match &self.store {
            Store::Sparse(rows) => rows[i]
                .binary_search_by_key(&j, |e| e.0)
                .map(|k| rows[i][k].1.clone())
                .unwrap_or_else(|_| S::zero(&self.ctx)),
            Store::Dense(v) => v[i * self.dim + j].clone(),
        }
    }

    /// Nonzero entries sorted by `(row, col)`.
    pub fn entries(&self) -> Vec<(usize, usize, S)> {
        (0..self.dim).flat_map(|i| self.row(i).into_iter().map(move |(j, v)| (i, j, v.clone()))).collect()
    }

    fn rows_owned(&self) -> Vec<Vec<(usize, S)>> {
        (0..self.dim).map(|i| self.row(i).into_iter().map(|(j, v)| (j, v.clone())).collect()).collect()
    }

    pub fn map(&self, f: impl Fn(&S) -> S + Sync) -> Self {
        let rows = (0..self.dim)
            .into_par_iter()
            .map(|i| self.row(i).into_iter().map(|(j, v)| (j, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self::from_rows(&self.ctx, self.dim, rows)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| v.mul(s))
    }

    pub fn neg(&self) -> Self {
        self.map(S::neg)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(S::conj)
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(&self.ctx, self.dim, self.entries().into_iter().map(|(i, j, v)| (j, i, v)))
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    fn check_dim(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "operator dimensions differ");
    }

    fn combine(&self, o: &Self, f: impl Fn(&S, &S) -> S + Sync) -> Self {
        self.check_dim(o);
        let zero = S::zero(&self.ctx);
        let rows = (0..self.dim)
            .into_par_iter()
            .map(|i| {
                let (a, b) = (self.row(i), o.row(i));
                let (mut p, mut q) = (0, 0);
                let mut out = Vec::with_capacity(a.len().max(b.len()));
                while p < a.len() || q < b.len() {
                    let ja = a.get(p).map_or(usize::MAX, |e| e.0);
                    let jb = b.get(q).map_or(usize::MAX, |e| e.0);
                    let (j, v) = if ja == jb {
                        p += 1;
                        q += 1;
                        (ja, f(a[p - 1].1, b[q - 1].1))
                    } else if ja < jb {
                        p += 1;
                        (ja, f(a[p - 1].1, &zero))
                    } else {
                        q += 1;
                        (jb, f(&zero, b[q - 1].1))
                    };
                    if !v.is_zero() {
                        out.push((j, v));
                    }
                }
                out
            })
            .collect();
        Self::from_rows(&self.ctx, self.dim, rows)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, S::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, S::sub)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_dim(o);
        let orows: Vec<Vec<(usize, &S)>> = (0..o.dim).map(|k| o.row(k)).collect();
        let rows = (0..self.dim)
            .into_par_iter()
            .map(|i| {
                let mut acc: Vec<Option<S>> = vec![None; self.dim];
                for (k, a) in self.row(i) {
                    for (j, b) in &orows[k] {
                        let t = a.mul(b);
                        acc[*j] = Some(match acc[*j].take() {
                            Some(s) => s.add(&t),
                            None => t,
                        });
                    }
                }
                acc.into_iter().enumerate().filter_map(|(j, v)| v.filter(|v| !v.is_zero()).map(|v| (j, v))).collect()
            })
            .collect();
        Self::from_rows(&self.ctx, self.dim, rows)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(&self.ctx, self.dim), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> S {
        (0..self.dim).fold(S::zero(&self.ctx), |acc, i| acc.add(&self.get(i, i)))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        (0..self.dim).flat_map(|i| self.row(i).into_iter().map(|(_, v)| v.abs())).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self − o`.
    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }

    /// True when every entry of `self − o` is an exact zero.
    pub fn exactly_equals(&self, o: &Self) -> bool {
        self.sub(o).nnz() == 0
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim * self.dim];
        for i in 0..self.dim {
            for (j, v) in self.row(i) {
                out[i * self.dim + j] = v.to_c64();
            }
        }
        out
    }

    /// Kronecker product with row-major index pairing.
    pub fn kron(&self, o: &Self) -> Self {
        let (da, db) = (self.dim, o.dim);
        let arows = self.rows_owned();
        let brows = o.rows_owned();
        let rows = (0..da * db)
            .into_par_iter()
            .map(|r| {
                let (i1, i2) = (r / db, r % db);
                let mut out = Vec::with_capacity(arows[i1].len() * brows[i2].len());
                for (j1, a) in &arows[i1] {
                    for (j2, b) in &brows[i2] {
                        let v = a.mul(b);
                        if !v.is_zero() {
                            out.push((j1 * db + j2, v));
                        }
                    }
                }
                out
            })
            .collect();
        Self::from_rows(&self.ctx, da * db, rows)
    }

    /// Places a two-site operator on the legs named by `slot` of a three-fold
    /// tensor product with leg dimensions `dims`.
    pub fn embed(&self, slot: Slot, dims: (usize, usize, usize)) -> Result<Self> {
        let (d1, d2, d3) = dims;
        let want = match slot {
            Slot::S12 => d1 * d2,
            Slot::S13 => d1 * d3,
            Slot::S23 => d2 * d3,
        };
        if self.dim != want {
            return Err(Error::Dimension(format!(
                "operator of dim {} cannot act on legs {slot:?} of ({d1},{d2},{d3})",
                self.dim
            )));
        }
        Ok(match slot {
            Slot::S12 => self.kron(&Self::identity(&self.ctx, d3)),
            Slot::S23 => Self::identity(&self.ctx, d1).kron(self),
            Slot::S13 => {
                let entries = self.entries().into_iter().flat_map(|(r, c, v)| {
                    let (i1, i3, j1, j3) = (r / d3, r % d3, c / d3, c % d3);
                    (0..d2).map(move |i2| ((i1 * d2 + i2) * d3 + i3, (j1 * d2 + i2) * d3 + j3, v.clone()))
                });
                Self::from_entries(&self.ctx, d1 * d2 * d3, entries)
            }
        })
    }

    /// The flip `V1 ⊗ V2 → V2 ⊗ V1`, `e_i ⊗ e_j ↦ e_j ⊗ e_i`.
    pub fn permutation(ctx: &S::Ctx, d1: usize, d2: usize) -> Self {
        Self::from_entries(
            ctx,
            d1 * d2,
            (0..d1).flat_map(|i| (0..d2).map(move |j| (j * d1 + i, i * d2 + j, S::one(ctx)))),
        )
    }

    /// `P A P` for an operator on `V ⊗ V`, exchanging the two legs.
    pub fn swap_legs(&self, d: usize) -> Self {
        assert_eq!(self.dim, d * d, "swap_legs needs an operator on V ⊗ V");
        let entries = self.entries().into_iter().map(|(r, c, v)| ((r % d) * d + r / d, (c % d) * d + c / d, v));
        Self::from_entries(&self.ctx, self.dim, entries)
    }

    /// Conjugation by a permutation of basis labels, `e_{i,j} ↦ e_{σ(i),σ(j)}`.
    pub fn relabel(&self, sigma: impl Fn(usize) -> usize) -> Self {
        let entries = self.entries().into_iter().map(|(r, c, v)| (sigma(r), sigma(c), v));
        Self::from_entries(&self.ctx, self.dim, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Cyclo, CycloField};

    type Op = Operator<Cyclo>;

    #[test]
    fn elementary_products_follow_the_delta_rule() {
        let f = CycloField::new(1);
        let e = |i, j| Op::elementary(&f, 3, i, j);
        assert!(e(4, 1).exactly_equals(&e(1, 1)));
        assert!(e(1, 2).mul(&e(2, 0)).exactly_equals(&e(1, 0)));
        assert_eq!(e(1, 2).mul(&e(0, 1)).nnz(), 0);
        assert!(e(-1, 5).exactly_equals(&e(2, 2)));
    }

    #[test]
    fn kron_layout_is_row_major() {
        let f = CycloField::new(1);
        let a = Op::elementary(&f, 2, 0, 1);
        let b = Op::elementary(&f, 2, 1, 0);
        let k = a.kron(&b);
        assert_eq!(k.entries().iter().map(|e| (e.0, e.1)).collect::<Vec<_>>(), vec![(1, 2)]);
        assert!(Op::identity(&f, 2).kron(&Op::identity(&f, 3)).exactly_equals(&Op::identity(&f, 6)));
    }

    #[test]
    fn permutation_squares_to_identity() {
        let f = CycloField::new(1);
        let p: Op = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| Op::elementary(&f, 3, i, j).kron(&Op::elementary(&f, 3, j, i)))
            .fold(Op::zeros(&f, 9), |acc, t| acc.add(&t));
        assert!(p.exactly_equals(&Op::permutation(&f, 3, 3)));
        assert!(p.mul(&p).exactly_equals(&Op::identity(&f, 9)));
        let p3 = Op::permutation(&f, 2, 2).embed(Slot::S12, (2, 2, 2)).unwrap();
        assert!(p3.mul(&p3).exactly_equals(&Op::identity(&f, 8)));
    }

    #[test]
    fn embed_13_inserts_identity_in_the_middle() {
        let f = CycloField::new(3);
        let w = Cyclo::unit(&f, 1, 3).unwrap();
        let a = Op::elementary(&f, 2, 0, 1).scale(&w);
        let b = Op::elementary(&f, 2, 1, 1);
        let ab = a.kron(&b).embed(Slot::S13, (2, 2, 2)).unwrap();
        let direct = a.kron(&Op::identity(&f, 2)).kron(&b);
        assert!(ab.exactly_equals(&direct));
        assert!(Op::identity(&f, 4).embed(Slot::S12, (2, 2, 2)).unwrap().exactly_equals(&Op::identity(&f, 8)));
        assert!(Op::identity(&f, 4).embed(Slot::S13, (2, 3, 2)).is_ok());
        assert!(Op::identity(&f, 4).embed(Slot::S13, (2, 2, 3)).is_err());
    }

    #[test]
    fn swap_legs_matches_conjugation_by_p() {
        let f = CycloField::new(5);
        let w = Cyclo::unit(&f, 1, 5).unwrap();
        let a = Op::from_fn(&f, 9, |i, j| w.pow((i * 3 + j * j) as i64 % 5).unwrap().scale((i + j) as i64 % 3));
        let p = Op::permutation(&f, 3, 3);
        assert!(a.swap_legs(3).exactly_equals(&p.mul(&a).mul(&p)));
    }

    #[test]
    fn storage_switches_at_ten_percent() {
        let f = CycloField::new(1);
        assert!(Op::identity(&f, 10).is_sparse());
        assert!(!Op::identity(&f, 5).is_sparse());
    }
}
