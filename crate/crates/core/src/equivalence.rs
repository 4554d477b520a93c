//! Monomial transformations of α-circulant matrices and orbit canonical forms.
//!
//! A pair `(N, M)` of monomial matrices acts on α-circulant matrices by
//! `A ↦ N⁻¹ A M`. The search only uses the subgroup generated by the pairs
//! in [`Generator`], all of which are orthogonal when `α² = 1`, so orbits
//! under this subgroup are unions of code-equivalence classes restricted to
//! self-dual codes.

use std::collections::{HashSet, VecDeque};

use crate::circulant::{extract_circulant, Border, CircVec, CodeSpec, DenseMatrix};
use crate::error::{invalid, Result};
use crate::ring::{ChainRing, RingElem};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `S(σ)·D` with `S_ij = δ_{i,σ(j)}`: column `j` holds `diag[j]` in row `σ(j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    ring: ChainRing,
    sigma: Vec<usize>,
    diag: Vec<RingElem>,
}

impl MonomialMatrix {
    pub fn new(ring: ChainRing, sigma: Vec<usize>, diag: Vec<RingElem>) -> Result<Self> {
        let k = sigma.len();
        if diag.len() != k {
            return invalid("permutation and diagonal lengths differ");
        }
        let mut seen = vec![false; k];
        for &s in &sigma {
            if s >= k || seen[s] {
                return invalid("sigma is not a permutation");
            }
            seen[s] = true;
        }
        if let Some(d) = diag.iter().find(|&&d| !ring.is_unit(d)) {
            return invalid(format!("diagonal entry {d} is not a unit"));
        }
        Ok(MonomialMatrix { ring, sigma, diag })
    }

    pub fn identity(ring: ChainRing, k: usize) -> Self {
        MonomialMatrix { ring, sigma: (0..k).collect(), diag: vec![RingElem::ONE; k] }
    }

    pub fn scalar(ring: ChainRing, k: usize, lambda: RingElem) -> Result<Self> {
        MonomialMatrix::new(ring, (0..k).collect(), vec![lambda; k])
    }

    pub fn diagonal(ring: ChainRing, diag: Vec<RingElem>) -> Result<Self> {
        MonomialMatrix::new(ring, (0..diag.len()).collect(), diag)
    }

    /// `T_α` (column 0 holds α in row `k-1`, column `j` holds 1 in row `j-1`).
    pub fn t_alpha(ring: ChainRing, k: usize, alpha: RingElem) -> Result<Self> {
        let sigma = (0..k).map(|j| (j + k - 1) % k).collect();
        let mut diag = vec![RingElem::ONE; k];
        diag[0] = alpha;
        MonomialMatrix::new(ring, sigma, diag)
    }

    /// Decomposes a dense matrix, if it is monomial.
    pub fn from_dense(a: &DenseMatrix) -> Option<Self> {
        let k = a.rows();
        if a.cols() != k {
            return None;
        }
        let mut sigma = Vec::with_capacity(k);
        let mut diag = Vec::with_capacity(k);
        for j in 0..k {
            let nz: Vec<usize> = (0..k).filter(|&i| !a.get(i, j).is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            sigma.push(nz[0]);
            diag.push(a.get(nz[0], j));
        }
        MonomialMatrix::new(a.ring(), sigma, diag).ok()
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn diag(&self) -> &[RingElem] {
        &self.diag
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let k = self.k();
        let mut m = DenseMatrix::zeros(self.ring, k, k);
        for j in 0..k {
            m.set(self.sigma[j], j, self.diag[j]);
        }
        m
    }

    /// `self · other`.
    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let r = self.ring;
        let sigma = other.sigma.iter().map(|&t| self.sigma[t]).collect();
        let diag = (0..self.k()).map(|j| r.mul(self.diag[other.sigma[j]], other.diag[j])).collect();
        MonomialMatrix { ring: r, sigma, diag }
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let k = self.k();
        let mut sigma = vec![0; k];
        let mut diag = vec![RingElem::ZERO; k];
        for j in 0..k {
            let i = self.sigma[j];
            sigma[i] = j;
            diag[i] = self.ring.inv(self.diag[j]).expect("diagonal entries are units");
        }
        MonomialMatrix { ring: self.ring, sigma, diag }
    }

    pub fn transpose(&self) -> MonomialMatrix {
        let k = self.k();
        let mut sigma = vec![0; k];
        let mut diag = vec![RingElem::ZERO; k];
        for j in 0..k {
            let i = self.sigma[j];
            sigma[i] = j;
            diag[i] = self.diag[j];
        }
        MonomialMatrix { ring: self.ring, sigma, diag }
    }

    /// `M·Mᵗ = I` iff every diagonal entry squares to one.
    pub fn is_orthogonal(&self) -> bool {
        self.diag.iter().all(|&d| self.ring.mul(d, d) == RingElem::ONE)
    }

    /// The common diagonal entry, if the diagonal part is scalar.
    pub fn scalar_part(&self) -> Option<RingElem> {
        let first = *self.diag.first()?;
        self.diag.iter().all(|&d| d == first).then_some(first)
    }

    /// Column and value of the single entry in row `i`.
    fn row_entry(&self, i: usize) -> (usize, RingElem) {
        let j = self.sigma.iter().position(|&s| s == i).expect("permutation");
        (j, self.diag[j])
    }
}

/// An element `(N, M)` acting by `A ↦ N⁻¹ A M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPair {
    pub n: MonomialMatrix,
    pub m: MonomialMatrix,
}

impl MonomialPair {
    pub fn new(n: MonomialMatrix, m: MonomialMatrix) -> Result<Self> {
        if n.k() != m.k() || n.ring != m.ring {
            return invalid("pair components have different sizes");
        }
        Ok(MonomialPair { n, m })
    }

    /// Composition: acting with `self` first, then `next`.
    pub fn then(&self, next: &MonomialPair) -> MonomialPair {
        MonomialPair { n: self.n.compose(&next.n), m: self.m.compose(&next.m) }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.n.is_orthogonal() && self.m.is_orthogonal()
    }

    /// `N⁻¹ A M` for an arbitrary square matrix, using the monomial structure.
    pub fn apply_dense(&self, a: &DenseMatrix) -> Result<DenseMatrix> {
        let k = self.n.k();
        if a.rows() != k || a.cols() != k {
            return invalid("matrix size does not match the pair");
        }
        let r = a.ring();
        let ninv = self.n.inverse();
        let mut out = DenseMatrix::zeros(r, k, k);
        for i in 0..k {
            let (c, dn) = ninv.row_entry(i);
            for j in 0..k {
                let (row_m, dm) = (self.m.sigma[j], self.m.diag[j]);
                out.set(i, j, r.mul(r.mul(dn, a.get(c, row_m)), dm));
            }
        }
        Ok(out)
    }

    /// Generating vector of `N⁻¹ cir(a) M`; fails if the result is not
    /// α-circulant, i.e. the pair is not in the group for this α.
    pub fn act(&self, a: &CircVec) -> Result<CircVec> {
        if a.k() != self.n.k() || a.ring() != self.n.ring {
            return invalid("vector does not match the pair");
        }
        let image = self.apply_dense(&a.cir())?;
        match extract_circulant(&image, a.alpha()) {
            Some(v) => Ok(v),
            None => invalid("pair does not preserve alpha-circulant structure"),
        }
    }

    /// Action on a bordered block. Both diagonal parts must be scalar:
    /// with `N = S·μ`, `M = S'·λ` the border maps to `(β, λγ, μ⁻¹δ)`.
    pub fn act_bordered(&self, spec: &CodeSpec) -> Result<CodeSpec> {
        let border = match spec.border() {
            Some(b) => b,
            None => return Ok(CodeSpec::double(self.act(spec.core())?)),
        };
        let (Some(mu), Some(lambda)) = (self.n.scalar_part(), self.m.scalar_part()) else {
            return invalid("bordered action needs scalar diagonal parts");
        };
        let r = spec.ring();
        let core = self.act(spec.core())?;
        let mu_inv = r.inv(mu).expect("unit");
        CodeSpec::bordered(
            core,
            Border::new(border.beta, r.mul(lambda, border.gamma), r.mul(mu_inv, border.delta)),
        )
    }

    /// The pair extended by a fixed border coordinate, `(diag(1,N), diag(1,M))`.
    pub fn bordered_extension(&self) -> MonomialPair {
        let extend = |x: &MonomialMatrix| {
            let mut sigma = vec![0];
            sigma.extend(x.sigma.iter().map(|&s| s + 1));
            let mut diag = vec![RingElem::ONE];
            diag.extend_from_slice(&x.diag);
            MonomialMatrix { ring: x.ring, sigma, diag }
        };
        MonomialPair { n: extend(&self.n), m: extend(&self.m) }
    }

    /// Projection of both components into `quotient`.
    pub fn project_to(&self, quotient: ChainRing) -> MonomialPair {
        let p = |x: &MonomialMatrix| MonomialMatrix {
            ring: quotient,
            sigma: x.sigma.clone(),
            diag: x.diag.iter().map(|d| quotient.reduce(d.value() as u64)).collect(),
        };
        MonomialPair { n: p(&self.n), m: p(&self.m) }
    }
}

/// Whether `f ↦ f((αx)^s)` is a well-defined automorphism of `R[x]/(x^k - α)`.
pub fn is_valid_s(ring: ChainRing, k: usize, alpha: RingElem, s: usize) -> bool {
    if k == 0 || s >= k.max(1) || gcd(s, k) != 1 {
        return false;
    }
    if ring.mul(alpha, alpha) != RingElem::ONE {
        return false;
    }
    ring.pow(alpha, (s * (k + 1)) as u64) == alpha
}

/// The pair `(M, M)` with `M⁻¹ cir_α(f) M = cir_α(f((αx)^s))`.
pub fn s_map_pair(ring: ChainRing, k: usize, alpha: RingElem, s: usize) -> Result<MonomialPair> {
    if !is_valid_s(ring, k, alpha, s) {
        return invalid(format!("s = {s} is not admissible for k = {k}, alpha = {alpha}"));
    }
    // Row i of M carries α^{si + ⌊si/k⌋} in column si mod k.
    let mut sigma = vec![0; k];
    let mut diag = vec![RingElem::ZERO; k];
    for i in 0..k {
        let j = s * i % k;
        sigma[j] = i;
        diag[j] = ring.pow(alpha, (s * i + s * i / k) as u64);
    }
    let m = MonomialMatrix::new(ring, sigma, diag)?;
    MonomialPair::new(m.clone(), m)
}

/// `diag(1, α^j, α^{2j}, …, α^{(k-1)j})`; conjugation takes α^i-circulant
/// matrices to α^{i-kj}-circulant ones.
pub fn type_shift_matrix(ring: ChainRing, k: usize, alpha: RingElem, j: u64) -> Result<MonomialMatrix> {
    if !ring.is_unit(alpha) {
        return invalid(format!("{alpha} is not a unit"));
    }
    let diag = (0..k).map(|i| ring.pow(alpha, i as u64 * j)).collect();
    MonomialMatrix::diagonal(ring, diag)
}

/// The generators whose closure is used for orbit canonicalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `(I, T_α)`: `f ↦ x·f`.
    ShiftRight,
    /// `(T_α, I)`: `f ↦ x⁻¹·f`.
    ShiftLeft,
    /// `(I, λI)`.
    ScaleRight(RingElem),
    /// `(λI, I)`.
    ScaleLeft(RingElem),
    /// `(M, M)`: `f ↦ f((αx)^s)`.
    SMap(usize),
}

impl Generator {
    pub fn pair(&self, ring: ChainRing, k: usize, alpha: RingElem) -> Result<MonomialPair> {
        let id = MonomialMatrix::identity(ring, k);
        match *self {
            Generator::ShiftRight => MonomialPair::new(id, MonomialMatrix::t_alpha(ring, k, alpha)?),
            Generator::ShiftLeft => MonomialPair::new(MonomialMatrix::t_alpha(ring, k, alpha)?, id),
            Generator::ScaleRight(l) => MonomialPair::new(id, MonomialMatrix::scalar(ring, k, l)?),
            Generator::ScaleLeft(l) => MonomialPair::new(MonomialMatrix::scalar(ring, k, l)?, id),
            Generator::SMap(s) => s_map_pair(ring, k, alpha, s),
        }
    }

    /// Closed-form action on a generating vector.
    pub fn apply(&self, a: &CircVec) -> CircVec {
        let r = a.ring();
        let k = a.k();
        let alpha = a.alpha();
        match *self {
            Generator::ShiftRight => a.shift(1),
            Generator::ShiftLeft => a.shift(k - 1).scale(r.inv(alpha).expect("alpha is a unit")),
            Generator::ScaleRight(l) => a.scale(l),
            Generator::ScaleLeft(l) => a.scale(r.inv(l).expect("scalar is a unit")),
            Generator::SMap(s) => {
                let mut out = vec![RingElem::ZERO; k];
                for (i, &c) in a.coeffs().iter().enumerate() {
                    let e = s * i;
                    let factor = r.pow(alpha, (e + e / k) as u64);
                    out[e % k] = r.add(out[e % k], r.mul(c, factor));
                }
                CircVec::with_parts(r, alpha, out)
            }
        }
    }

    /// Closed-form action on a bordered spec (scalar-diagonal generators only).
    pub fn apply_bordered(&self, spec: &CodeSpec) -> CodeSpec {
        let core = self.apply(spec.core());
        let Some(b) = spec.border() else {
            return CodeSpec::double(core);
        };
        let r = spec.ring();
        let border = match *self {
            Generator::ScaleRight(l) => Border::new(b.beta, r.mul(l, b.gamma), b.delta),
            Generator::ScaleLeft(l) => Border::new(b.beta, b.gamma, r.mul(r.inv(l).expect("unit"), b.delta)),
            _ => b,
        };
        CodeSpec::bordered(core, border).expect("border stays in range")
    }

    /// Whether both monomial matrices of this generator have scalar diagonal part.
    pub fn has_scalar_diagonals(&self, ring: ChainRing, k: usize, alpha: RingElem) -> bool {
        self.pair(ring, k, alpha)
            .map(|p| p.n.scalar_part().is_some() && p.m.scalar_part().is_some())
            .unwrap_or(false)
    }
}

/// Orthogonal generators for double α-circulant codes (`α² = 1`).
pub fn double_generators(ring: ChainRing, k: usize, alpha: RingElem) -> Vec<Generator> {
    let mut gens = vec![Generator::ShiftRight, Generator::ShiftLeft];
    for l in ring.involutive_units() {
        if l != RingElem::ONE {
            gens.push(Generator::ScaleRight(l));
            gens.push(Generator::ScaleLeft(l));
        }
    }
    for s in 1..k {
        // s = 1 is the identity when α = 1
        if is_valid_s(ring, k, alpha, s) && !(s == 1 && alpha == RingElem::ONE) {
            gens.push(Generator::SMap(s));
        }
    }
    gens
}

/// Generators admissible for bordered codes: those among
/// [`double_generators`] for the core size whose diagonal parts are scalar.
pub fn bordered_generators(ring: ChainRing, core_k: usize, alpha: RingElem) -> Vec<Generator> {
    double_generators(ring, core_k, alpha)
        .into_iter()
        .filter(|g| g.has_scalar_diagonals(ring, core_k, alpha))
        .collect()
}

fn orbit_min<T, K, F, G>(start: T, key: K, gens: &[G], apply: F) -> T
where
    T: Clone + Eq + std::hash::Hash,
    K: Fn(&T) -> Vec<u32>,
    F: Fn(&G, &T) -> T,
{
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut best_key = key(&start);
    let mut best = start.clone();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(cur) = queue.pop_front() {
        for g in gens {
            let next = apply(g, &cur);
            if seen.insert(next.clone()) {
                let k = key(&next);
                if k < best_key {
                    best_key = k;
                    best = next.clone();
                }
                queue.push_back(next);
            }
        }
    }
    best
}

/// Lexicographically least vector in the orbit under [`double_generators`].
pub fn canonical_form(a: &CircVec) -> CircVec {
    let gens = double_generators(a.ring(), a.k(), a.alpha());
    orbit_min(a.clone(), |v| v.values(), &gens, |g, v| g.apply(v))
}

/// Orbit size under [`double_generators`].
pub fn orbit_size(a: &CircVec) -> usize {
    let gens = double_generators(a.ring(), a.k(), a.alpha());
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([a.clone()]);
    seen.insert(a.clone());
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = g.apply(&cur);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// Canonical form of a double or bordered spec. Bordered specs are ordered
/// by core digits, then `(β, γ, δ)`.
pub fn canonical_spec(spec: &CodeSpec) -> CodeSpec {
    match spec.border() {
        None => CodeSpec::double(canonical_form(spec.core())),
        Some(_) => {
            let core = spec.core();
            let gens = bordered_generators(core.ring(), core.k(), core.alpha());
            let key = |s: &CodeSpec| {
                let mut v = s.core().values();
                v.extend(s.border().expect("bordered").values());
                v
            };
            orbit_min(spec.clone(), key, &gens, |g, s| g.apply_bordered(s))
        }
    }
}

/// Necklace representatives (least rotations) of length `k` over
/// `{0, …, q-1}` in lexicographic order, each tagged with whether it is
/// aperiodic (a Lyndon word). Fredricksen–Kessler–Maiorana.
pub struct Necklaces {
    k: usize,
    q: u32,
    word: Vec<u32>,
    started: bool,
    done: bool,
}

impl Necklaces {
    pub fn new(k: usize, q: u32) -> Self {
        Necklaces { k, q, word: vec![0; k + 1], started: false, done: k == 0 || q == 0 }
    }

    /// Advances to the next prenecklace; returns its period `p`.
    fn step(&mut self) -> Option<usize> {
        let n = self.k;
        if !self.started {
            self.started = true;
            return Some(1);
        }
        let a = &mut self.word;
        let mut i = n;
        while i >= 1 && a[i] == self.q - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        a[i] += 1;
        for j in i + 1..=n {
            a[j] = a[j - i];
        }
        Some(i)
    }
}

impl Iterator for Necklaces {
    /// (word, is_lyndon)
    type Item = (Vec<u32>, bool);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            match self.step() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(p) if self.k % p == 0 => {
                    return Some((self.word[1..].to_vec(), p == self.k));
                }
                Some(_) => continue,
            }
        }
    }
}

/// All necklace representatives of length `k` over `q` symbols.
pub fn necklaces(k: usize, q: u32) -> impl Iterator<Item = Vec<u32>> {
    Necklaces::new(k, q).map(|(w, _)| w)
}

/// Lyndon words (aperiodic necklace representatives) in lexicographic order.
pub fn lyndon_words(k: usize, q: u32) -> impl Iterator<Item = Vec<u32>> {
    Necklaces::new(k, q).filter_map(|(w, lyndon)| lyndon.then_some(w))
}

/// Lyndon words followed by the constant words not already among them;
/// the pre-filter for circulant generating vectors.
pub fn circulant_candidates(k: usize, q: u32) -> impl Iterator<Item = Vec<u32>> {
    let constants = (0..q).map(move |c| vec![c; k]).filter(move |_| k > 1);
    lyndon_words(k, q).chain(constants)
}
