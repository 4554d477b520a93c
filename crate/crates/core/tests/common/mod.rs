//! Independent reference implementations used as oracles by the
//! integration and acceptance tests. Nothing here calls the library's
//! arithmetic beyond constructing values.

#![allow(dead_code)]

use std::collections::BTreeSet;

use circlift::circulant::{Border, CircVec, CodeSpec, DenseMatrix};
use circlift::equivalence::{MonomialMatrix, MonomialPair};
use circlift::{ChainRing, RingElem};
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

pub fn z(order: u32) -> ChainRing {
    ChainRing::parse(&format!("z{order}")).unwrap()
}

pub fn za(order: u32, alpha: u32) -> ChainRing {
    let r = z(order);
    r.with_alpha(r.elem(alpha).unwrap()).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_values(rng: &mut StdRng, modulus: u32, k: usize) -> Vec<u32> {
    (0..k).map(|_| rng.random_range(0..modulus)).collect()
}

pub fn cv(ring: ChainRing, alpha: u32, values: &[u32]) -> CircVec {
    CircVec::from_values(ring, alpha, values).unwrap()
}

pub fn double(ring: ChainRing, alpha: u32, values: &[u32]) -> CodeSpec {
    CodeSpec::double(cv(ring, alpha, values))
}

pub fn bordered(ring: ChainRing, alpha: u32, values: &[u32], border: [u32; 3]) -> CodeSpec {
    let e = |x: u32| ring.elem(x).unwrap();
    CodeSpec::bordered(cv(ring, alpha, values), Border::new(e(border[0]), e(border[1]), e(border[2]))).unwrap()
}

pub type Mat = Vec<Vec<u64>>;

/// Entry `(i, j)` is `a_{j-i}` for `j ≥ i` and `α·a_{k+j-i}` below the diagonal.
pub fn naive_cir(modulus: u64, alpha: u64, a: &[u32]) -> Mat {
    let k = a.len();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if j >= i { a[j - i] as u64 } else { alpha * a[k + j - i] as u64 % modulus })
                .collect()
        })
        .collect()
}

pub fn naive_mul(modulus: u64, a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|l| row[l] * b[l][j]).sum::<u64>() % modulus).collect())
        .collect()
}

pub fn naive_transpose(a: &Mat) -> Mat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn spec_mod(spec: &CodeSpec) -> (u64, u64) {
    (spec.ring().order() as u64, spec.alpha().value() as u64)
}

/// Right half of the generator, assembled from the spec's raw digits.
pub fn naive_block(spec: &CodeSpec) -> Mat {
    let (q, alpha) = spec_mod(spec);
    let c = naive_cir(q, alpha, &spec.core().values());
    match spec.border() {
        None => c,
        Some(b) => {
            let [beta, gamma, delta] = b.values().map(u64::from);
            let k = c.len() + 1;
            let mut m = vec![vec![0; k]; k];
            m[0][0] = beta;
            for j in 1..k {
                m[0][j] = gamma;
                m[j][0] = delta;
            }
            for i in 1..k {
                for j in 1..k {
                    m[i][j] = c[i - 1][j - 1];
                }
            }
            m
        }
    }
}

pub fn naive_generator(spec: &CodeSpec) -> Mat {
    let b = naive_block(spec);
    let k = b.len();
    (0..k)
        .map(|i| {
            let mut row = vec![0; 2 * k];
            row[i] = 1;
            row[k..].copy_from_slice(&b[i]);
            row
        })
        .collect()
}

pub fn naive_self_dual(spec: &CodeSpec) -> bool {
    let (q, _) = spec_mod(spec);
    let g = naive_generator(spec);
    naive_mul(q, &g, &naive_transpose(&g)).iter().flatten().all(|&x| x == 0)
}

pub fn lee(modulus: u64, x: u64) -> u64 {
    x.min(modulus - x)
}

pub fn codewords(spec: &CodeSpec) -> impl Iterator<Item = Vec<u64>> {
    let (q, _) = spec_mod(spec);
    let g = naive_generator(spec);
    let k = g.len();
    let total = q.pow(k as u32);
    (1..total).map(move |idx| {
        let msg: Vec<u64> = (0..k).map(|i| idx / q.pow(i as u32) % q).collect();
        (0..2 * k).map(|j| (0..k).map(|i| msg[i] * g[i][j]).sum::<u64>() % q).collect()
    })
}

/// Minimum Lee weight over all nonzero codewords, no pruning.
pub fn naive_min_lee(spec: &CodeSpec) -> u32 {
    let (q, _) = spec_mod(spec);
    codewords(spec).map(|c| c.iter().map(|&x| lee(q, x)).sum::<u64>()).min().unwrap() as u32
}

pub fn naive_min_hamming(spec: &CodeSpec) -> u32 {
    codewords(spec).map(|c| c.iter().filter(|&&x| x != 0).count()).min().unwrap() as u32
}

/// `f((αx)^s)` reduced modulo `x^k - α`.
pub fn substitute(modulus: u64, alpha: u64, f: &[u32], s: usize) -> Vec<u32> {
    let k = f.len();
    let pow = |b: u64, e: usize| (0..e).fold(1u64, |acc, _| acc * b % modulus);
    let mut out = vec![0u64; k];
    for (i, &fi) in f.iter().enumerate() {
        let e = s * i;
        // (αx)^{si} = α^{si} x^{si}, and x^{si} = α^{⌊si/k⌋} x^{si mod k}
        let coeff = fi as u64 * pow(alpha, e) % modulus * pow(alpha, e / k) % modulus;
        out[e % k] = (out[e % k] + coeff) % modulus;
    }
    out.into_iter().map(|x| x as u32).collect()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All vectors of length `k` over `{0, …, q-1}`.
pub fn all_vectors(q: u32, k: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (q as u64).pow(k as u32);
    (0..total).map(move |idx| (0..k).map(|i| (idx / (q as u64).pow(i as u32) % q as u64) as u32).collect())
}

/// Every self-dual double spec over `target` whose digits reduce to `base`
/// modulo `p`, found by testing all preimages.
pub fn brute_double_lifts(target: ChainRing, alpha: u32, base: &[u32]) -> BTreeSet<Vec<u32>> {
    let p = target.p();
    let q = target.order();
    let k = base.len();
    let per = q / p;
    all_vectors(per, k)
        .map(|t| base.iter().zip(&t).map(|(&b, &t)| b + p * t).collect::<Vec<u32>>())
        .filter(|v| v.iter().all(|&x| x < q))
        .filter(|v| naive_self_dual(&double(target, alpha, v)))
        .collect()
}

/// Bordered analogue of [`brute_double_lifts`]; entries are core digits
/// followed by the border triple.
pub fn brute_bordered_lifts(target: ChainRing, alpha: u32, base: &[u32], border: [u32; 3]) -> BTreeSet<Vec<u32>> {
    let p = target.p();
    let per = target.order() / p;
    let mut all: Vec<u32> = base.to_vec();
    all.extend(border);
    all_vectors(per, all.len())
        .map(|t| all.iter().zip(&t).map(|(&b, &t)| b + p * t).collect::<Vec<u32>>())
        .filter(|v| {
            let k = v.len() - 3;
            naive_self_dual(&bordered(target, alpha, &v[..k], [v[k], v[k + 1], v[k + 2]]))
        })
        .collect()
}

pub fn spec_digits(spec: &CodeSpec) -> Vec<u32> {
    let mut v = spec.core().values();
    if let Some(b) = spec.border() {
        v.extend(b.values());
    }
    v
}

pub fn as_elems(ring: ChainRing, v: &[u32]) -> Vec<RingElem> {
    v.iter().map(|&x| ring.elem(x).unwrap()).collect()
}

pub fn inv_mod(q: u64, x: u64) -> u64 {
    (1..q).find(|y| x * y % q == 1).expect("unit")
}

/// `S(σ)·D` built from the definition `S_ij = δ_{i,σ(j)}`.
pub fn explicit(q: u64, m: &MonomialMatrix) -> Mat {
    let k = m.k();
    let mut out = vec![vec![0; k]; k];
    for j in 0..k {
        out[m.sigma()[j]][j] = m.diag()[j].value() as u64 % q;
    }
    out
}

pub fn explicit_inverse(q: u64, m: &MonomialMatrix) -> Mat {
    let k = m.k();
    let mut out = vec![vec![0; k]; k];
    for j in 0..k {
        out[j][m.sigma()[j]] = inv_mod(q, m.diag()[j].value() as u64 % q);
    }
    out
}

pub fn conjugate(q: u64, pair: &MonomialPair, a: &Mat) -> Mat {
    let left = naive_mul(q, &explicit_inverse(q, &pair.n), a);
    naive_mul(q, &left, &explicit(q, &pair.m))
}

pub fn identity(k: usize) -> Mat {
    (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn to_mat(d: &DenseMatrix) -> Mat {
    d.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect()
}
