//! Z/2 boundary-matrix reduction and an independent persistent Betti oracle.

use std::collections::BTreeMap;

use crate::complex::{Simplex, SimplicialComplex};
use crate::filtration::{FilterAssignment, IndexFilter};
use crate::rational::Rational;

/// Pairing of simplices produced by reducing the boundary matrix in index
/// order. Indices are positions in [`Pairing::order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    order: Vec<Simplex>,
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

/// Whether inserting a simplex raises or lowers a Betti number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimplexSign {
    /// Raises `β_degree`; the simplex has dimension `degree`.
    Positive { degree: usize },
    /// Lowers `β_degree`; the simplex has dimension `degree + 1`.
    Negative { degree: usize },
}

impl Pairing {
    pub fn order(&self) -> &[Simplex] {
        &self.order
    }

    pub fn simplex(&self, index: usize) -> &Simplex {
        &self.order[index]
    }

    /// Sign of every simplex, by position in the order.
    pub fn signs(&self) -> Vec<SimplexSign> {
        let mut signs: Vec<Option<SimplexSign>> = vec![None; self.order.len()];
        for &(birth, death) in &self.pairs {
            let degree = self.order[birth].dim();
            signs[birth] = Some(SimplexSign::Positive { degree });
            signs[death] = Some(SimplexSign::Negative { degree });
        }
        for &e in &self.essential {
            signs[e] = Some(SimplexSign::Positive {
                degree: self.order[e].dim(),
            });
        }
        signs
            .into_iter()
            .map(|s| s.expect("every simplex is classified"))
            .collect()
    }
}

/// Sparse Z/2 column as a sorted list of row indices.
type Column = Vec<usize>;

fn add_columns(a: &Column, b: &Column) -> Column {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Standard left-to-right column reduction over Z/2.
pub fn reduce(order: &IndexFilter) -> Pairing {
    let pos = order.positions();
    let mut columns: Vec<Column> = order
        .order()
        .iter()
        .map(|s| {
            let mut col: Column = s.facets().iter().map(|f| pos[f]).collect();
            col.sort_unstable();
            col
        })
        .collect();
    let mut owner_of_low: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pairs = Vec::new();
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match owner_of_low.get(&low) {
                Some(&other) => {
                    let reduced = add_columns(&columns[j], &columns[other]);
                    columns[j] = reduced;
                }
                None => {
                    owner_of_low.insert(low, j);
                    pairs.push((low, j));
                    break;
                }
            }
        }
    }
    let mut paired = vec![false; columns.len()];
    for &(b, d) in &pairs {
        paired[b] = true;
        paired[d] = true;
    }
    pairs.sort_unstable();
    let essential = (0..columns.len()).filter(|&i| !paired[i]).collect();
    Pairing {
        order: order.order().to_vec(),
        pairs,
        essential,
    }
}

/// Dense Z/2 vector.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitVec(Vec<u64>);

impl BitVec {
    fn zeros(n: usize) -> Self {
        BitVec(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, other: &BitVec) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn leading(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Row-reduces `vectors`; returns the rank.
fn gf2_rank(vectors: &[BitVec]) -> usize {
    let mut pivots: BTreeMap<usize, BitVec> = BTreeMap::new();
    for v in vectors {
        let mut v = v.clone();
        while let Some(lead) = v.leading() {
            match pivots.get(&lead) {
                Some(p) => v.xor(p),
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Basis of the kernel of the linear map sending basis vector `i` to
/// `images[i]`, as vectors in the domain of dimension `images.len()`.
fn gf2_kernel(images: &[BitVec]) -> Vec<BitVec> {
    let n = images.len();
    let mut pivots: BTreeMap<usize, (BitVec, BitVec)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (i, image) in images.iter().enumerate() {
        let mut v = image.clone();
        let mut combo = BitVec::zeros(n);
        combo.set(i);
        loop {
            match v.leading() {
                None => {
                    kernel.push(combo);
                    break;
                }
                Some(lead) => match pivots.get(&lead) {
                    Some((pv, pc)) => {
                        v.xor(pv);
                        combo.xor(pc);
                    }
                    None => {
                        pivots.insert(lead, (v, combo));
                        break;
                    }
                },
            }
        }
    }
    kernel
}

/// Rank of `H_k(F(i)) -> H_k(F(j))` over Z/2, for `i <= j`.
///
/// Computed from cycle and boundary spaces of the two sublevel complexes
/// without consulting any pairing, so it can serve as an oracle for
/// diagram multiplicities.
pub fn persistent_betti(f: &FilterAssignment<'_>, i: &Rational, j: &Rational, k: usize) -> usize {
    debug_assert!(i <= j, "persistent_betti needs i <= j");
    let complex = f.complex();
    let in_level = |s: &Simplex, t: &Rational| f.value(s) <= t;
    let k_simplices: Vec<&Simplex> = complex
        .simplices()
        .iter()
        .filter(|s| s.dim() == k && in_level(s, j))
        .collect();
    let k_index: BTreeMap<&Simplex, usize> = k_simplices.iter().enumerate().map(|(n, s)| (*s, n)).collect();
    let cycles = cycle_basis(complex, f, i, k, &k_index);
    if cycles.is_empty() {
        return 0;
    }
    let boundaries: Vec<BitVec> = complex
        .simplices()
        .iter()
        .filter(|s| s.dim() == k + 1 && in_level(s, j))
        .map(|s| {
            let mut v = BitVec::zeros(k_simplices.len());
            for facet in s.facets() {
                v.set(k_index[&facet]);
            }
            v
        })
        .collect();
    let b = gf2_rank(&boundaries);
    let mut both = boundaries;
    both.extend(cycles);
    gf2_rank(&both) - b
}

/// Cycle space of dimension `k` in `F(i)`, embedded in the k-chains of
/// `F(j)` through `k_index`.
fn cycle_basis(
    complex: &SimplicialComplex,
    f: &FilterAssignment<'_>,
    i: &Rational,
    k: usize,
    k_index: &BTreeMap<&Simplex, usize>,
) -> Vec<BitVec> {
    let chains: Vec<&Simplex> = complex
        .simplices()
        .iter()
        .filter(|s| s.dim() == k && f.value(s) <= i)
        .collect();
    if k == 0 {
        return chains
            .iter()
            .map(|s| {
                let mut v = BitVec::zeros(k_index.len());
                v.set(k_index[s]);
                v
            })
            .collect();
    }
    let faces: Vec<&Simplex> = complex.simplices().iter().filter(|s| s.dim() + 1 == k).collect();
    let face_index: BTreeMap<&Simplex, usize> = faces.iter().enumerate().map(|(n, s)| (*s, n)).collect();
    let images: Vec<BitVec> = chains
        .iter()
        .map(|s| {
            let mut v = BitVec::zeros(faces.len());
            for facet in s.facets() {
                v.set(face_index[&facet]);
            }
            v
        })
        .collect();
    gf2_kernel(&images)
        .into_iter()
        .map(|combo| {
            let mut v = BitVec::zeros(k_index.len());
            for (n, s) in chains.iter().enumerate() {
                if combo.0[n / 64] >> (n % 64) & 1 == 1 {
                    v.set(k_index[s]);
                }
            }
            v
        })
        .collect()
}

/// Betti number of the sublevel complex at `t`.
pub fn betti(f: &FilterAssignment<'_>, t: &Rational, k: usize) -> usize {
    persistent_betti(f, t, t, k)
}

/// Multiplicity of the concise diagram point `(birth, death)` in degree `k`
/// from the inclusion–exclusion of persistent Betti numbers. `death = None`
/// stands for +∞. Heights are taken from the filter's critical values, so
/// "just below `x`" means the previous critical value.
pub fn corner_multiplicity(f: &FilterAssignment<'_>, birth: &Rational, death: Option<&Rational>, k: usize) -> i64 {
    let heights = f.heights();
    let before = |x: &Rational| heights.iter().rev().find(|h| *h < x).cloned();
    let top = heights.last().cloned().expect("nonempty filter");
    let rank = |a: Option<&Rational>, b: Option<&Rational>| -> i64 {
        match (a, b) {
            (None, _) | (_, None) => 0,
            (Some(a), Some(b)) if a > b => 0,
            (Some(a), Some(b)) => persistent_betti(f, a, b, k) as i64,
        }
    };
    let birth_prev = before(birth);
    match death {
        None => rank(Some(birth), Some(&top)) - rank(birth_prev.as_ref(), Some(&top)),
        Some(death) => {
            let death_prev = before(death);
            rank(Some(birth), death_prev.as_ref())
                - rank(Some(birth), Some(death))
                - rank(birth_prev.as_ref(), death_prev.as_ref())
                + rank(birth_prev.as_ref(), Some(death))
        }
    }
}
