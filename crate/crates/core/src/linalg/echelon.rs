//! Row-reduction kernels shared by every subspace type.

use super::field::{Elem, FieldDesc};

/// A reduced row-echelon basis: pivots strictly increasing, each pivot entry
/// equal to one and the only nonzero entry in its column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Echelon {
    pub rows: Vec<Vec<Elem>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn empty() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result has zeros in every pivot
    /// column and is the canonical coset representative of `v`.
    pub fn reduce(&self, field: &FieldDesc, v: &mut [Elem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub_mul(x, &c, r);
                }
            }
        }
    }

    pub fn contains(&self, field: &FieldDesc, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the rank grew.
    pub fn insert(&mut self, field: &FieldDesc, mut v: Vec<Elem>) -> bool {
        self.reduce(field, &mut v);
        let Some(lead) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[lead]).expect("nonzero lead");
        for x in v.iter_mut() {
            *x = field.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if field.is_zero(&row[lead]) {
                continue;
            }
            let c = row[lead].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !field.is_zero(r) {
                    *x = field.sub_mul(x, &c, r);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }
}

/// Gauss-Jordan reduction of `rows` (each of length `width`) to canonical RREF.
pub(crate) fn rref(field: &FieldDesc, mut rows: Vec<Vec<Elem>>, width: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(&rows[rank][col]).unwrap();
        for x in rows[rank].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, r) in row.iter_mut().zip(pivot_row.iter()).skip(col) {
                if !field.is_zero(r) {
                    *x = field.sub_mul(x, &c, r);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { rows, pivots }
}

/// Rank of the span of `rows`.
pub(crate) fn rank(field: &FieldDesc, rows: Vec<Vec<Elem>>, width: usize) -> usize {
    rref(field, rows, width).rank()
}

/// Basis of `{x : rows . x = 0}`, one vector per free column in increasing order.
pub(crate) fn nullspace(field: &FieldDesc, rows: Vec<Vec<Elem>>, width: usize) -> Vec<Vec<Elem>> {
    let ech = rref(field, rows, width);
    let mut out = Vec::new();
    let mut next_pivot = 0;
    for free in 0..width {
        if next_pivot < ech.pivots.len() && ech.pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![field.zero_elem(); width];
        v[free] = field.one_elem();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = field.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Solves `sum_k c_k columns[k] = target`. Free unknowns are set to zero, so
/// the answer is the first solution in pivot order. `None` if inconsistent.
pub(crate) fn solve(field: &FieldDesc, columns: &[Vec<Elem>], target: &[Elem]) -> Option<Vec<Elem>> {
    let d = columns.len();
    let rows: Vec<Vec<Elem>> = (0..target.len())
        .map(|i| {
            let mut r: Vec<Elem> = columns.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let ech = rref(field, rows, d + 1);
    if ech.pivots.last() == Some(&d) {
        return None;
    }
    let mut sol = vec![field.zero_elem(); d];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        sol[p] = row[d].clone();
    }
    Some(sol)
}
