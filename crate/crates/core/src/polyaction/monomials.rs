use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::numbers::Field;

/// Exponent vectors of one degree, in descending lexicographic order
/// (`x1^d` first, `xn^d` last).
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    degree: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let mut exps = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill(&mut exps, &mut cur, 0, degree as u32);
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { nvars, degree, exps, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn format(&self, i: usize) -> String {
        format_monomial(&self.exps[i])
    }
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

/// Variable names used in printed output: `x, y, z` for up to three variables,
/// `x1, x2, ...` otherwise.
pub fn variable_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

pub fn format_monomial(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            let v = variable_name(e.len(), i);
            if k == 1 { v } else { format!("{v}^{k}") }
        })
        .collect();
    if parts.is_empty() { "1".to_string() } else { parts.join("*") }
}

/// All monomial bases up to a degree, with cached multiplication tables.
#[derive(Debug)]
pub struct MonomialTower {
    nvars: usize,
    bases: Vec<MonomialBasis>,
    products: Mutex<HashMap<(usize, usize), Arc<Vec<u32>>>>,
}

impl Clone for MonomialTower {
    fn clone(&self) -> Self {
        MonomialTower { nvars: self.nvars, bases: self.bases.clone(), products: Mutex::new(HashMap::new()) }
    }
}

impl MonomialTower {
    pub fn new(nvars: usize, max_degree: usize) -> Self {
        let bases = (0..=max_degree).map(|d| MonomialBasis::new(nvars, d)).collect();
        MonomialTower { nvars, bases, products: Mutex::new(HashMap::new()) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, d: usize) -> &MonomialBasis {
        &self.bases[d]
    }

    pub fn dim(&self, d: usize) -> usize {
        self.bases[d].len()
    }

    /// `table[i * N_b + j]` is the index of `m_i * m_j` in degree `a + b`.
    pub fn product_table(&self, a: usize, b: usize) -> Arc<Vec<u32>> {
        let mut cache = self.products.lock().expect("product cache poisoned");
        cache
            .entry((a, b))
            .or_insert_with(|| {
                let (ba, bb, bc) = (&self.bases[a], &self.bases[b], &self.bases[a + b]);
                let mut t = Vec::with_capacity(ba.len() * bb.len());
                let mut buf = vec![0u32; self.nvars];
                for ea in ba.exponents() {
                    for eb in bb.exponents() {
                        for k in 0..self.nvars {
                            buf[k] = ea[k] + eb[k];
                        }
                        t.push(bc.index_of(&buf).expect("product degree in range") as u32);
                    }
                }
                Arc::new(t)
            })
            .clone()
    }

    /// Product of dense homogeneous polynomials of degrees `a` and `b`.
    pub fn mul<F: Field>(&self, field: &F, p: &[F::Elem], a: usize, q: &[F::Elem], b: usize) -> Vec<F::Elem> {
        let table = self.product_table(a, b);
        let nb = self.dim(b);
        let mut out = vec![field.zero(); self.dim(a + b)];
        for (i, x) in p.iter().enumerate() {
            if field.is_zero(x) {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                if field.is_zero(y) {
                    continue;
                }
                let k = table[i * nb + j] as usize;
                out[k] = field.add(&out[k], &field.mul(x, y));
            }
        }
        out
    }

    /// Product of a polynomial of degree `a` with a `block`-tuple of polynomials of degree `b`,
    /// stored block-major.
    pub fn mul_blocks<F: Field>(
        &self,
        field: &F,
        p: &[F::Elem],
        a: usize,
        q: &[F::Elem],
        b: usize,
        block: usize,
    ) -> Vec<F::Elem> {
        let nb = self.dim(b);
        let mut out = Vec::with_capacity(block * self.dim(a + b));
        for u in 0..block {
            out.extend(self.mul(field, p, a, &q[u * nb..(u + 1) * nb], b));
        }
        out
    }

    pub fn format_poly<F: Field>(&self, field: &F, p: &[F::Elem], d: usize) -> String {
        let terms: Vec<String> = p
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| {
                let m = self.bases[d].format(i);
                if m == "1" {
                    field.format(c)
                } else if field.is_one(c) {
                    m
                } else {
                    format!("({})*{m}", field.format(c))
                }
            })
            .collect();
        if terms.is_empty() { "0".into() } else { terms.join(" + ") }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::RationalField;
    use crate::numbers::rational::rat;

    #[test]
    fn sizes_and_order() {
        for n in 1..5 {
            for d in 0..7 {
                let b = MonomialBasis::new(n, d);
                assert_eq!(b.len() as u64, binomial((d + n - 1) as u64, (n - 1) as u64));
            }
        }
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.exponents(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(b.format(1), "x*y");
    }

    #[test]
    fn multiplication() {
        let t = MonomialTower::new(2, 4);
        let f = RationalField;
        // (x + y)^2 = x^2 + 2xy + y^2
        let p = vec![rat(1), rat(1)];
        let sq = t.mul(&f, &p, 1, &p, 1);
        assert_eq!(sq, vec![rat(1), rat(2), rat(1)]);
        assert_eq!(t.format_poly(&f, &sq, 2), "x^2 + (2)*x*y + y^2");
    }
}
