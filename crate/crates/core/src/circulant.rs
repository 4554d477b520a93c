//! The algebra of α-circulant matrices.
//!
//! A generating vector `(a_0, …, a_{k-1})` is identified with the polynomial
//! `Σ a_i x^i` in `R[x]/(x^k - α)`, and `cir_α` maps it to the matrix whose
//! row `i` is the `i`-fold α-twisted right shift of the vector. Everything in
//! the search runs on the vector form; [`DenseMatrix`] exists for bordered
//! blocks, Gram matrices and explicit cross-checks.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::ring::{ChainRing, RingElem};

/// Row-major matrix over a chain ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    ring: ChainRing,
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl DenseMatrix {
    pub fn zeros(ring: ChainRing, rows: usize, cols: usize) -> Self {
        DenseMatrix { ring, rows, cols, data: vec![RingElem::ZERO; rows * cols] }
    }

    pub fn identity(ring: ChainRing, k: usize) -> Self {
        Self::scalar(ring, k, RingElem::ONE)
    }

    pub fn scalar(ring: ChainRing, k: usize, lambda: RingElem) -> Self {
        let mut m = Self::zeros(ring, k, k);
        for i in 0..k {
            m.set(i, i, lambda);
        }
        m
    }

    pub fn from_rows(ring: ChainRing, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return invalid("ragged matrix rows");
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, ring.elem(v)?);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: RingElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.value()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<Self> {
        if self.cols != other.rows || self.ring != other.ring {
            return invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let r = self.ring;
        let modulus = r.order() as u64;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for l in 0..self.cols {
                    acc += self.get(i, l).value() as u64 * other.get(l, j).value() as u64;
                }
                out.set(i, j, r.reduce(acc % modulus));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) || self.ring != other.ring {
            return invalid("matrix shapes differ");
        }
        let r = self.ring;
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| r.add(x, y)).collect();
        Ok(DenseMatrix { ring: r, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, lambda: RingElem) -> Self {
        let r = self.ring;
        DenseMatrix {
            ring: r,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| r.mul(lambda, x)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Result<Self> {
        let mut acc = Self::identity(self.ring, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Entrywise reduction into a quotient ring.
    pub fn project_to(&self, quotient: ChainRing) -> Self {
        DenseMatrix {
            ring: quotient,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| quotient.reduce(x.value() as u64)).collect(),
        }
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A generating vector of an α-circulant matrix, read as an element of
/// `R[x]/(x^k - α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircVec {
    ring: ChainRing,
    alpha: RingElem,
    coeffs: Vec<RingElem>,
}

impl CircVec {
    pub fn new(ring: ChainRing, alpha: RingElem, coeffs: Vec<RingElem>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("generating vector must have length at least 1");
        }
        if !ring.is_unit(alpha) || alpha.value() >= ring.order() {
            return invalid(format!("alpha = {alpha} is not a unit of {ring}"));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.value() >= ring.order()) {
            return invalid(format!("{bad} is not a residue of {ring}"));
        }
        Ok(CircVec { ring, alpha, coeffs })
    }

    pub fn from_values(ring: ChainRing, alpha: u32, values: &[u32]) -> Result<Self> {
        let coeffs = values.iter().map(|&v| ring.elem(v)).collect::<Result<Vec<_>>>()?;
        CircVec::new(ring, ring.elem(alpha)?, coeffs)
    }

    /// Parses `1,3,3,0`; a comma-free string of single digits such as
    /// `1111101011011010` is also accepted.
    pub fn parse(ring: ChainRing, alpha: RingElem, text: &str) -> Result<Self> {
        let values = parse_digits(text)?;
        let coeffs = values.iter().map(|&v| ring.elem(v)).collect::<Result<Vec<_>>>()?;
        CircVec::new(ring, alpha, coeffs)
    }

    pub fn zero(ring: ChainRing, alpha: RingElem, k: usize) -> Self {
        CircVec { ring, alpha, coeffs: vec![RingElem::ZERO; k] }
    }

    /// The polynomial `x^i`.
    pub fn monomial(ring: ChainRing, alpha: RingElem, k: usize, i: usize) -> Self {
        let mut v = Self::zero(ring, alpha, k);
        let (q, r) = (i / k, i % k);
        v.coeffs[r] = ring.pow(alpha, q as u64);
        v
    }

    #[inline]
    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    #[inline]
    pub fn alpha(&self) -> RingElem {
        self.alpha
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn values(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_digits(&self) -> String {
        format_digits(&self.values())
    }

    fn check_compatible(&self, other: &CircVec) -> Result<()> {
        if self.ring != other.ring || self.alpha != other.alpha || self.k() != other.k() {
            return invalid("circulant vectors over different R[x]/(x^k - alpha)");
        }
        Ok(())
    }

    pub fn add(&self, other: &CircVec) -> Result<CircVec> {
        self.check_compatible(other)?;
        let r = self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| r.add(x, y)).collect();
        Ok(CircVec { coeffs, ..self.clone() })
    }

    pub fn scale(&self, lambda: RingElem) -> CircVec {
        let r = self.ring;
        CircVec { coeffs: self.coeffs.iter().map(|&c| r.mul(lambda, c)).collect(), ..self.clone() }
    }

    /// Polynomial product reduced modulo `x^k - α`.
    pub fn circ_mul(&self, other: &CircVec) -> Result<CircVec> {
        self.check_compatible(other)?;
        let r = self.ring;
        let k = self.k();
        let modulus = r.order() as u64;
        let mut acc = vec![0u64; k];
        let alpha = self.alpha.value() as u64;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = a.value() as u64 * b.value() as u64 % modulus;
                let idx = i + j;
                if idx < k {
                    acc[idx] += prod;
                } else {
                    acc[idx - k] += prod * alpha % modulus;
                }
            }
        }
        Ok(CircVec { coeffs: acc.into_iter().map(|v| r.reduce(v)).collect(), ..self.clone() })
    }

    /// Multiplication by `x^i` (cheap shift), `i` may exceed `k`.
    pub fn shift(&self, i: usize) -> CircVec {
        let k = self.k();
        let r = self.ring;
        let mut out = vec![RingElem::ZERO; k];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let t = j + i;
            let wraps = (t / k) as u64;
            out[t % k] = r.mul(c, r.pow(self.alpha, wraps));
        }
        CircVec { coeffs: out, ..self.clone() }
    }

    /// The α-circulant matrix generated by this vector.
    pub fn cir(&self) -> DenseMatrix {
        let k = self.k();
        let r = self.ring;
        let mut m = DenseMatrix::zeros(r, k, k);
        for i in 0..k {
            for j in 0..k {
                let v = if j >= i {
                    self.coeffs[j - i]
                } else {
                    r.mul(self.alpha, self.coeffs[k + j - i])
                };
                m.set(i, j, v);
            }
        }
        m
    }

    /// Entrywise reduction into `quotient`.
    pub fn project_to(&self, quotient: ChainRing) -> Result<CircVec> {
        let alpha = quotient.reduce(self.alpha.value() as u64);
        let coeffs = self.coeffs.iter().map(|c| quotient.reduce(c.value() as u64)).collect();
        CircVec::new(quotient, alpha, coeffs)
    }

    /// Reinterprets the vector over another ring (used when a quotient
    /// vector is passed through the section `e`).
    pub(crate) fn with_parts(ring: ChainRing, alpha: RingElem, coeffs: Vec<RingElem>) -> CircVec {
        CircVec { ring, alpha, coeffs }
    }
}

impl fmt::Display for CircVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

pub fn parse_digits(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty digit list".into()));
    }
    if text.contains(',') {
        text.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad digit {t:?} in {text:?}"))))
            .collect()
    } else {
        text.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}"))))
            .collect()
    }
}

pub fn format_digits(values: &[u32]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// `T_α = cir_α(0, 1, 0, …, 0)`.
pub fn t_alpha(ring: ChainRing, k: usize, alpha: RingElem) -> DenseMatrix {
    if k == 1 {
        return DenseMatrix::scalar(ring, 1, alpha);
    }
    CircVec::monomial(ring, alpha, k, 1).cir()
}

/// `A` is α-circulant iff `A T_α = T_α A`.
pub fn is_alpha_circulant(a: &DenseMatrix, alpha: RingElem) -> bool {
    if a.rows() != a.cols() {
        return false;
    }
    let t = t_alpha(a.ring(), a.rows(), alpha);
    a.mul(&t).ok() == t.mul(a).ok()
}

/// Row 0 of an α-circulant matrix, or `None` if `a` is not α-circulant.
pub fn extract_circulant(a: &DenseMatrix, alpha: RingElem) -> Option<CircVec> {
    if !is_alpha_circulant(a, alpha) {
        return None;
    }
    let v = CircVec::new(a.ring(), alpha, a.row(0).to_vec()).ok()?;
    (v.cir() == *a).then_some(v)
}

/// Border entries `(β, γ, δ)` of a bordered α-circulant block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Border {
    pub beta: RingElem,
    pub gamma: RingElem,
    pub delta: RingElem,
}

impl Border {
    pub fn new(beta: RingElem, gamma: RingElem, delta: RingElem) -> Self {
        Border { beta, gamma, delta }
    }

    pub fn values(&self) -> [u32; 3] {
        [self.beta.value(), self.gamma.value(), self.delta.value()]
    }

    pub fn parse(ring: ChainRing, text: &str) -> Result<Self> {
        let v = parse_digits(text)?;
        if v.len() != 3 {
            return Err(Error::Parse(format!("border {text:?} needs three entries beta,gamma,delta")));
        }
        Ok(Border::new(ring.elem(v[0])?, ring.elem(v[1])?, ring.elem(v[2])?))
    }

    pub fn to_digits(&self) -> String {
        format_digits(&self.values())
    }

    pub fn project_to(&self, quotient: ChainRing) -> Border {
        let p = |x: RingElem| quotient.reduce(x.value() as u64);
        Border::new(p(self.beta), p(self.gamma), p(self.delta))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeKind {
    Double,
    Bordered,
}

/// A double or bordered α-circulant code.
///
/// For double codes the generator is `(I_k | cir_α(a))` with `a` of length
/// `k`. For bordered codes `a` has length `k - 1` and the right half is
///
/// ```text
/// β  γ … γ
/// δ
/// ⋮  cir_α(a)
/// δ
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    core: CircVec,
    border: Option<Border>,
}

impl CodeSpec {
    pub fn double(core: CircVec) -> Self {
        CodeSpec { core, border: None }
    }

    pub fn bordered(core: CircVec, border: Border) -> Result<Self> {
        let r = core.ring();
        if [border.beta, border.gamma, border.delta].iter().any(|x| x.value() >= r.order()) {
            return invalid("border entries out of range");
        }
        Ok(CodeSpec { core, border: Some(border) })
    }

    pub fn kind(&self) -> CodeKind {
        if self.border.is_some() {
            CodeKind::Bordered
        } else {
            CodeKind::Double
        }
    }

    #[inline]
    pub fn core(&self) -> &CircVec {
        &self.core
    }

    #[inline]
    pub fn border(&self) -> Option<Border> {
        self.border
    }

    #[inline]
    pub fn ring(&self) -> ChainRing {
        self.core.ring()
    }

    #[inline]
    pub fn alpha(&self) -> RingElem {
        self.core.alpha()
    }

    /// Number of generator rows.
    pub fn k(&self) -> usize {
        self.core.k() + usize::from(self.border.is_some())
    }

    /// Code length `n = 2k`.
    pub fn n(&self) -> usize {
        2 * self.k()
    }

    /// The right half of the generator matrix.
    pub fn right_block(&self) -> DenseMatrix {
        let c = self.core.cir();
        match self.border {
            None => c,
            Some(b) => {
                let k = self.k();
                let mut m = DenseMatrix::zeros(self.ring(), k, k);
                m.set(0, 0, b.beta);
                for j in 1..k {
                    m.set(0, j, b.gamma);
                    m.set(j, 0, b.delta);
                }
                for i in 1..k {
                    for j in 1..k {
                        m.set(i, j, c.get(i - 1, j - 1));
                    }
                }
                m
            }
        }
    }

    /// `(I_k | right block)`.
    pub fn generator_matrix(&self) -> DenseMatrix {
        let k = self.k();
        let block = self.right_block();
        let mut g = DenseMatrix::zeros(self.ring(), k, 2 * k);
        for i in 0..k {
            g.set(i, i, RingElem::ONE);
            for j in 0..k {
                g.set(i, k + j, block.get(i, j));
            }
        }
        g
    }

    /// `G·Gᵗ`.
    pub fn gram(&self) -> DenseMatrix {
        let g = self.generator_matrix();
        g.mul(&g.transpose()).expect("square shapes")
    }

    /// Self-orthogonal with free rank `k` and length `2k`, hence self-dual.
    pub fn is_self_dual(&self) -> bool {
        let r = self.ring();
        let block = self.right_block();
        let k = self.k();
        // I + B·Bᵗ = 0
        for i in 0..k {
            for j in i..k {
                let mut acc = u64::from(i == j);
                for l in 0..k {
                    acc += block.get(i, l).value() as u64 * block.get(j, l).value() as u64;
                }
                if !r.reduce(acc).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn project_to(&self, quotient: ChainRing) -> Result<CodeSpec> {
        Ok(CodeSpec {
            core: self.core.project_to(quotient)?,
            border: self.border.map(|b| b.project_to(quotient)),
        })
    }

    /// Ordering key used for deduplication and deterministic output.
    pub fn sort_key(&self) -> (Vec<u32>, [u32; 3]) {
        (self.core.values(), self.border.map_or([0; 3], |b| b.values()))
    }
}
