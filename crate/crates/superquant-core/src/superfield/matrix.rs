//! Square supermatrices over the function algebra: supertrace, exact
//! inverses on the constant-plus-nilpotent class, and the Berezinian.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::superfield::{ChartSpec, Parity, Rat, SuperFunction};

/// Square matrix indexed by the graded coordinate set, with a declared
/// overall parity: entry `(i, j)` must have parity `p(i) + p(j) + p(B)`.
#[derive(Clone, PartialEq, Debug)]
pub struct SuperMatrix {
    chart: Arc<ChartSpec>,
    parity: Parity,
    entries: Vec<Vec<SuperFunction>>,
}

impl SuperMatrix {
    pub fn new(
        chart: &Arc<ChartSpec>,
        entries: Vec<Vec<SuperFunction>>,
        parity: Parity,
    ) -> Result<Self> {
        let d = chart.dim();
        if entries.len() != d || entries.iter().any(|r| r.len() != d) {
            return Err(Error::Invalid("matrix shape mismatch".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if *e.chart() != **chart {
                    return Err(Error::ChartMismatch);
                }
                let want = chart
                    .coord_parity((i + 1) as u8)
                    .xor(chart.coord_parity((j + 1) as u8))
                    .xor(parity);
                if !e.has_parity(want) {
                    return Err(Error::Parity(format!(
                        "matrix entry ({}, {}) must be {:?}",
                        i + 1,
                        j + 1,
                        want
                    )));
                }
            }
        }
        Ok(SuperMatrix { chart: chart.clone(), parity, entries })
    }

    pub fn identity(chart: &Arc<ChartSpec>) -> Self {
        let d = chart.dim();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            SuperFunction::one(chart)
                        } else {
                            SuperFunction::zero(chart)
                        }
                    })
                    .collect()
            })
            .collect();
        SuperMatrix { chart: chart.clone(), parity: Parity::Even, entries }
    }

    pub fn chart(&self) -> &Arc<ChartSpec> {
        &self.chart
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn entry(&self, i: usize, j: usize) -> &SuperFunction {
        &self.entries[i][j]
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn mul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        if *self.chart != *other.chart {
            return Err(Error::ChartMismatch);
        }
        let d = self.dim();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|k| {
                        let mut acc = SuperFunction::zero(&self.chart);
                        for j in 0..d {
                            acc = &acc + &(&self.entries[i][j] * &other.entries[j][k]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(SuperMatrix {
            chart: self.chart.clone(),
            parity: self.parity.xor(other.parity),
            entries,
        })
    }

    /// Signed diagonal sum `str B = sum_i (-1)^(p(i)(p(B)+p(i))) B_i^i`.
    pub fn supertrace(&self) -> SuperFunction {
        let mut acc = SuperFunction::zero(&self.chart);
        for i in 0..self.dim() {
            let pi = self.chart.coord_parity((i + 1) as u8);
            let neg = pi.is_odd() && self.parity.xor(pi).is_odd();
            let t = &self.entries[i][i];
            acc = if neg { &acc - t } else { &acc + t };
        }
        acc
    }

    /// Entry-wise derivative with the row-parity twist
    /// `(d_i A)_l^k = (-1)^(p(i)p(k)) d_i A_l^k`; the result has parity
    /// `p(B) + p(i)`.
    pub fn partial_twisted(&self, i: usize) -> Result<SuperMatrix> {
        let dir = self.chart.check_coord(i)?;
        let pdir = self.chart.coord_parity(dir);
        let d = self.dim();
        let mut entries = Vec::with_capacity(d);
        for k in 0..d {
            let pk = self.chart.coord_parity((k + 1) as u8);
            let mut row = Vec::with_capacity(d);
            for l in 0..d {
                let mut e = self.entries[k][l].partial(i)?;
                if pdir.is_odd() && pk.is_odd() {
                    e = -&e;
                }
                row.push(e);
            }
            entries.push(row);
        }
        Ok(SuperMatrix {
            chart: self.chart.clone(),
            parity: self.parity.xor(pdir),
            entries,
        })
    }

    fn constant_matrix(&self) -> Vec<Vec<Rat>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.constant_part()).collect())
            .collect()
    }

    /// Checks membership in the supported class: constant part invertible
    /// and every non-constant entry term in the odd-generated ideal.
    fn split_supported(&self) -> Result<(Vec<Vec<Rat>>, SuperMatrix)> {
        if self.parity.is_odd() {
            return Err(Error::UnsupportedBerezinian("odd overall parity".into()));
        }
        let c = self.constant_matrix();
        let d = self.dim();
        let mut nil = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(d);
            for j in 0..d {
                let e = &self.entries[i][j]
                    - &SuperFunction::constant(&self.chart, c[i][j].clone());
                if !e.in_odd_ideal() {
                    return Err(Error::UnsupportedBerezinian(format!(
                        "entry ({}, {}) has a non-constant even part outside the odd ideal",
                        i + 1,
                        j + 1
                    )));
                }
                row.push(e);
            }
            nil.push(row);
        }
        if rational_inverse(&c).is_none() {
            return Err(Error::UnsupportedBerezinian("singular constant part".into()));
        }
        Ok((c, SuperMatrix { chart: self.chart.clone(), parity: Parity::Even, entries: nil }))
    }

    /// Exact inverse on the supported class via a terminating Neumann series.
    pub fn inverse(&self) -> Result<SuperMatrix> {
        let (c, nil) = self.split_supported()?;
        let cinv = rational_inverse(&c).expect("checked in split_supported");
        let cinv_m = SuperMatrix {
            chart: self.chart.clone(),
            parity: Parity::Even,
            entries: cinv
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|q| SuperFunction::constant(&self.chart, q.clone()))
                        .collect()
                })
                .collect(),
        };
        // A = C (I + C^-1 N)  =>  A^-1 = (sum (-C^-1 N)^j) C^-1
        let x = cinv_m.mul(&nil)?;
        let mut acc = SuperMatrix::identity(&self.chart);
        let mut p = SuperMatrix::identity(&self.chart);
        for j in 1..=self.chart.m() + 1 {
            p = p.mul(&x)?;
            if p.is_zero() {
                break;
            }
            acc = acc.add_signed(&p, j % 2 == 1);
        }
        acc.mul(&cinv_m)
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    fn add_signed(&self, other: &SuperMatrix, negate: bool) -> SuperMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(a, b)| if negate { a - b } else { a + b })
                    .collect()
            })
            .collect();
        SuperMatrix { chart: self.chart.clone(), parity: self.parity, entries }
    }

    fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<SuperFunction>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// `Ber A = det(A00 - A01 A11^-1 A10) / det(A11)` on the supported
    /// class; the result is even with invertible constant part.
    pub fn berezinian(&self) -> Result<SuperFunction> {
        self.split_supported()?;
        let n = self.chart.n();
        let d = self.dim();
        let er: Vec<usize> = (0..n).collect();
        let or: Vec<usize> = (n..d).collect();
        if or.is_empty() {
            return Ok(det_block(&self.chart, &self.block(&er, &er)));
        }
        let a00 = self.block(&er, &er);
        let a01 = self.block(&er, &or);
        let a10 = self.block(&or, &er);
        let a11 = self.block(&or, &or);
        let a11inv = invert_even_block(&self.chart, &a11)?;
        let corr = block_mul(&self.chart, &a01, &block_mul(&self.chart, &a11inv, &a10));
        let top = block_sub(&a00, &corr);
        let det_top = det_block(&self.chart, &top);
        let det_bot = det_block(&self.chart, &a11);
        Ok(&det_top * &det_bot.invert_nilpotent()?)
    }
}

fn block_mul(
    chart: &Arc<ChartSpec>,
    a: &[Vec<SuperFunction>],
    b: &[Vec<SuperFunction>],
) -> Vec<Vec<SuperFunction>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|k| {
                    let mut acc = SuperFunction::zero(chart);
                    for j in 0..inner {
                        acc = &acc + &(&a[i][j] * &b[j][k]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn block_sub(a: &[Vec<SuperFunction>], b: &[Vec<SuperFunction>]) -> Vec<Vec<SuperFunction>> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

/// Leibniz determinant of a block with commuting (even) entries.
fn det_block(chart: &Arc<ChartSpec>, a: &[Vec<SuperFunction>]) -> SuperFunction {
    let k = a.len();
    if k == 0 {
        return SuperFunction::one(chart);
    }
    let mut acc = SuperFunction::zero(chart);
    let mut perm: Vec<usize> = (0..k).collect();
    permute(&mut perm, 0, &mut |p, sign| {
        let mut prod = SuperFunction::one(chart);
        for (i, &j) in p.iter().enumerate() {
            prod = &prod * &a[i][j];
        }
        acc = if sign { &acc - &prod } else { &acc + &prod };
    });
    acc
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], bool)) {
    let n = p.len();
    if k == n {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        f(p, inv % 2 == 1);
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Inverse of an even block of the form constant + odd-ideal remainder.
fn invert_even_block(
    chart: &Arc<ChartSpec>,
    a: &[Vec<SuperFunction>],
) -> Result<Vec<Vec<SuperFunction>>> {
    let k = a.len();
    let c: Vec<Vec<Rat>> = a.iter().map(|r| r.iter().map(|e| e.constant_part()).collect()).collect();
    let cinv = rational_inverse(&c)
        .ok_or_else(|| Error::UnsupportedBerezinian("singular odd-odd block".into()))?;
    let cinv_f: Vec<Vec<SuperFunction>> = cinv
        .iter()
        .map(|r| r.iter().map(|q| SuperFunction::constant(chart, q.clone())).collect())
        .collect();
    let nil: Vec<Vec<SuperFunction>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, e)| e - &SuperFunction::constant(chart, c[i][j].clone()))
                .collect()
        })
        .collect();
    let x = block_mul(chart, &cinv_f, &nil);
    let mut acc: Vec<Vec<SuperFunction>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        SuperFunction::one(chart)
                    } else {
                        SuperFunction::zero(chart)
                    }
                })
                .collect()
        })
        .collect();
    let mut p = acc.clone();
    for j in 1..=chart.m() + 1 {
        p = block_mul(chart, &p, &x);
        if p.iter().all(|r| r.iter().all(|e| e.is_zero())) {
            break;
        }
        let negate = j % 2 == 1;
        acc = acc
            .iter()
            .zip(&p)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(u, v)| if negate { u - v } else { u + v })
                    .collect()
            })
            .collect();
    }
    Ok(block_mul(chart, &acc, &cinv_f))
}

/// Exact inverse of a rational matrix, `None` when singular.
pub(crate) fn rational_inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut work: Vec<Vec<Rat>> = a.iter().map(|r| {
        let mut row = r.clone();
        row.extend(std::iter::repeat_with(Rat::zero).take(n));
        row
    }).collect();
    for (i, row) in work.iter_mut().enumerate() {
        row[n + i] = Rat::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        let p = work[col][col].clone();
        for x in work[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !work[r][col].is_zero() {
                let f = work[r][col].clone();
                for c in 0..2 * n {
                    let sub = &work[col][c] * &f;
                    work[r][c] -= sub;
                }
            }
        }
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Positivity of the constant part, used to gate orientation-preserving
/// coordinate changes.
pub(crate) fn constant_part_positive(f: &SuperFunction) -> bool {
    f.constant_part().is_positive()
}
