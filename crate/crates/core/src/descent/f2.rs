//! Small F2 linear algebra on bitmasks.

/// A subspace of F2^128 held in echelon form (distinct leading bits).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<u128>,
}

fn lead(v: u128) -> u32 {
    127 - v.leading_zeros()
}

impl Echelon {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Normal form of `v` modulo the subspace; linear in `v`.
    pub fn reduce(&self, mut v: u128) -> u128 {
        for r in &self.rows {
            if v & (1 << lead(*r)) != 0 {
                v ^= r;
            }
        }
        v
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.rows.push(v);
        self.rows.sort_by(|a, b| b.cmp(a));
        true
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }
}

/// Basis of the kernel of the map sending the `i`-th unit vector to `images[i]`.
pub fn kernel(images: &[u128]) -> Vec<u64> {
    assert!(images.len() <= 64);
    let mut rows: Vec<(u128, u64)> = images.iter().enumerate().map(|(i, &v)| (v, 1u64 << i)).collect();
    let mut basis = Vec::new();
    let mut pivots: Vec<(u128, u64)> = Vec::new();
    for (mut v, mut src) in rows.drain(..) {
        for (pv, ps) in &pivots {
            if v & (1 << lead(*pv)) != 0 {
                v ^= pv;
                src ^= ps;
            }
        }
        if v == 0 {
            basis.push(src);
        } else {
            pivots.push((v, src));
            pivots.sort_by(|a, b| b.0.cmp(&a.0));
        }
    }
    basis
}

/// All elements of the span of `basis`, ascending.
pub fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &b in basis {
        let extra: Vec<u64> = out.iter().map(|x| x ^ b).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out.dedup();
    out
}
