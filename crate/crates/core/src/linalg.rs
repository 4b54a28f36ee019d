//! Exact linear algebra over the rationals: a square solver and an
//! incremental fraction-free row echelon form with kernel extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Solves `matrix * x = rhs` for square, nonsingular `matrix`.
///
/// Returns `None` when the matrix is singular.
pub fn solve_square(
    mut matrix: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
) -> Option<Vec<Rational>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = matrix[col][col].recip();
        for entry in &mut matrix[col][col..] {
            *entry *= &inv;
        }
        rhs[col] *= &inv;
        for r in 0..n {
            if r == col || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            let (pivot_row, row) = if r < col {
                let (head, tail) = matrix.split_at_mut(col);
                (&tail[0], &mut head[r])
            } else {
                let (head, tail) = matrix.split_at_mut(r);
                (&head[col], &mut tail[0])
            };
            for (entry, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *entry -= &factor * p;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    Some(rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct EchelonRow {
    pivot: usize,
    entries: Vec<BigInt>,
}

/// Row echelon form over the integers, grown one row at a time.
///
/// Each stored row is primitive (content 1) and vanishes at the pivot
/// columns of every row stored before it. Elimination is fraction-free; the
/// pivot of a new row is its entry of smallest bit size, ties going to the
/// lowest column.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    columns: usize,
    rows: Vec<EchelonRow>,
}

/// A row reduced against the current echelon form but not yet stored.
#[derive(Debug, Clone)]
pub struct ReducedRow(EchelonRow);

impl IncrementalEchelon {
    pub fn new(columns: usize) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows; `None` if it is dependent.
    pub fn reduce(&self, row: &[Rational]) -> Option<ReducedRow> {
        assert_eq!(row.len(), self.columns);
        let mut entries = clear_denominators(row);
        for stored in &self.rows {
            let x = &entries[stored.pivot];
            if x.is_zero() {
                continue;
            }
            let x = x.clone();
            let p = &stored.entries[stored.pivot];
            for (e, s) in entries.iter_mut().zip(&stored.entries) {
                *e = &*e * p - &x * s;
            }
            make_primitive(&mut entries);
        }
        let pivot = entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .min_by_key(|(i, e)| (e.bits(), *i))
            .map(|(i, _)| i)?;
        make_primitive(&mut entries);
        Some(ReducedRow(EchelonRow { pivot, entries }))
    }

    pub fn push(&mut self, row: ReducedRow) {
        self.rows.push(row.0);
    }

    /// Reduces and stores `row`; returns whether the rank grew.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        match self.reduce(row) {
            Some(r) => {
                self.push(r);
                true
            }
            None => false,
        }
    }

    /// A nonzero kernel vector, or `None` at full column rank.
    ///
    /// The lowest free column is set to one and the other free columns to
    /// zero; the result is scaled so its first nonzero entry is 1.
    pub fn kernel_vector(&self) -> Option<Vec<Rational>> {
        let mut is_pivot = vec![false; self.columns];
        for r in &self.rows {
            is_pivot[r.pivot] = true;
        }
        let free = is_pivot.iter().position(|p| !p)?;
        let mut x = vec![Rational::zero(); self.columns];
        x[free] = Rational::one();
        for r in self.rows.iter().rev() {
            let mut acc = Rational::zero();
            for (j, e) in r.entries.iter().enumerate() {
                if j != r.pivot && !e.is_zero() && !x[j].is_zero() {
                    acc += &x[j] * Rational::from_integer(e.clone());
                }
            }
            x[r.pivot] = -acc / Rational::from_integer(r.entries[r.pivot].clone());
        }
        let lead = x.iter().find(|v| !v.is_zero())?.clone();
        for v in &mut x {
            *v /= &lead;
        }
        Some(x)
    }
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

fn make_primitive(entries: &mut [BigInt]) {
    let g = entries.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    if !g.is_zero() && !g.is_one() {
        for e in entries.iter_mut() {
            *e = &*e / &g;
        }
    }
    // sign-normalize so the first nonzero entry is positive
    if let Some(first) = entries.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in entries.iter_mut() {
                *e = -&*e;
            }
        }
    }
}
