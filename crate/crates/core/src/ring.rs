//! Arithmetic in the chain rings `Z_{p^m}`.
//!
//! A [`ChainRing`] is a small copyable descriptor; every operation takes it
//! explicitly so the element type can stay a bare residue. The ideals of
//! `Z_{p^m}` form the chain `R ⊃ (p) ⊃ (p^2) ⊃ … ⊃ (p^{m-1}) ⊃ 0`, the residue
//! field is `F_p`, and the minimal ideal `I = (p^{m-1})` is an `F_p`-line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported ring order.
pub const MAX_RING_ORDER: u32 = 1 << 16;

/// An element of `Z_{p^m}`, stored as its least non-negative residue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElem(u32);

impl RingElem {
    pub const ZERO: RingElem = RingElem(0);
    pub const ONE: RingElem = RingElem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the residue field `F_q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueElem(u32);

impl ResidueElem {
    pub fn new(value: u32, q: u32) -> Self {
        ResidueElem(value % q)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

/// Descriptor of `Z_{p^m}` with an optional distinguished unit `alpha`,
/// `alpha^2 = 1`, used by circulant constructions and the section `e`.
///
/// Equality compares the ring only, not `alpha`.
#[derive(Clone, Copy, Debug)]
pub struct ChainRing {
    p: u32,
    m: u32,
    modulus: u32,
    alpha: Option<RingElem>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for ChainRing {}

impl std::hash::Hash for ChainRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl ChainRing {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if m == 0 {
            return invalid("nilpotency length must be at least 1");
        }
        let mut modulus: u64 = 1;
        for _ in 0..m {
            modulus *= p as u64;
            if modulus > MAX_RING_ORDER as u64 {
                return invalid(format!("{p}^{m} exceeds the supported ring order {MAX_RING_ORDER}"));
            }
        }
        Ok(ChainRing { p, m, modulus: modulus as u32, alpha: None })
    }

    /// Parses names such as `z4`, `Z8`, `z9` or `z2`.
    pub fn parse(name: &str) -> Result<Self> {
        let digits = name
            .strip_prefix('z')
            .or_else(|| name.strip_prefix('Z'))
            .ok_or_else(|| Error::Parse(format!("ring name {name:?} must look like z4")))?;
        let order: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("ring name {name:?} has no integer order")))?;
        if order < 2 {
            return Err(Error::Parse(format!("ring order {order} is too small")));
        }
        let mut p = 2;
        while order % p != 0 {
            p += 1;
        }
        let (mut rest, mut m) = (order, 0);
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::Parse(format!("ring order {order} is not a prime power")));
        }
        ChainRing::new(p, m)
    }

    /// Sets the distinguished unit. Requires `alpha^2 = 1`.
    pub fn with_alpha(mut self, alpha: RingElem) -> Result<Self> {
        let a = self.reduce(alpha.0 as u64);
        if self.mul(a, a) != RingElem::ONE {
            return invalid(format!("alpha = {} does not square to 1 in {}", alpha.0, self.name()));
        }
        self.alpha = Some(a);
        Ok(self)
    }

    pub fn without_alpha(mut self) -> Self {
        self.alpha = None;
        self
    }

    pub fn name(&self) -> String {
        format!("z{}", self.modulus)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Size of the residue field.
    #[inline]
    pub fn q(&self) -> u32 {
        self.p
    }

    /// `|R| = q^m`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn alpha(&self) -> Option<RingElem> {
        self.alpha
    }

    /// Generator of the maximal ideal.
    pub fn theta(&self) -> RingElem {
        self.reduce(self.p as u64)
    }

    /// `theta^{m-1}`, the generator of the minimal ideal.
    pub fn minimal_ideal_generator(&self) -> RingElem {
        RingElem(self.modulus / self.p)
    }

    pub fn minus_one(&self) -> RingElem {
        RingElem(self.modulus - 1)
    }

    pub fn is_field(&self) -> bool {
        self.m == 1
    }

    /// Checked constructor.
    pub fn elem(&self, value: u32) -> Result<RingElem> {
        if value >= self.modulus {
            return invalid(format!("{value} is not a least residue of {}", self.name()));
        }
        Ok(RingElem(value))
    }

    #[inline]
    pub fn reduce(&self, value: u64) -> RingElem {
        RingElem((value % self.modulus as u64) as u32)
    }

    #[inline]
    pub fn reduce_signed(&self, value: i64) -> RingElem {
        RingElem(value.rem_euclid(self.modulus as i64) as u32)
    }

    #[inline]
    pub fn add(&self, x: RingElem, y: RingElem) -> RingElem {
        let s = x.0 + y.0;
        RingElem(if s >= self.modulus { s - self.modulus } else { s })
    }

    #[inline]
    pub fn sub(&self, x: RingElem, y: RingElem) -> RingElem {
        RingElem(if x.0 >= y.0 { x.0 - y.0 } else { x.0 + self.modulus - y.0 })
    }

    #[inline]
    pub fn neg(&self, x: RingElem) -> RingElem {
        self.sub(RingElem::ZERO, x)
    }

    #[inline]
    pub fn mul(&self, x: RingElem, y: RingElem) -> RingElem {
        RingElem(((x.0 as u64 * y.0 as u64) % self.modulus as u64) as u32)
    }

    pub fn pow(&self, x: RingElem, mut e: u64) -> RingElem {
        let (mut base, mut acc) = (x, RingElem::ONE);
        if self.modulus == 1 {
            return RingElem::ZERO;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// A residue is a unit iff it is not divisible by `p`.
    #[inline]
    pub fn is_unit(&self, x: RingElem) -> bool {
        x.0 % self.p != 0
    }

    pub fn inv(&self, x: RingElem) -> Option<RingElem> {
        if !self.is_unit(x) {
            return None;
        }
        // Extended Euclid on (x, p^m).
        let (mut r0, mut r1) = (self.modulus as i64, x.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Some(self.reduce_signed(t0))
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.modulus).map(RingElem)
    }

    pub fn units(&self) -> Vec<RingElem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    /// Units `u` with `u^2 = 1`; the scalars allowed in orthogonal monomial matrices.
    pub fn involutive_units(&self) -> Vec<RingElem> {
        self.elements().filter(|&x| self.mul(x, x) == RingElem::ONE).collect()
    }

    #[inline]
    pub fn lee_weight(&self, x: RingElem) -> u32 {
        x.0.min(self.modulus - x.0)
    }

    /// The quotient `R / (theta^{m-levels})`, i.e. `Z_{p^{m-levels}}`, with `alpha` projected.
    pub fn quotient(&self, levels: u32) -> Result<ChainRing> {
        if levels == 0 || levels >= self.m {
            return invalid(format!("projection by {levels} levels needs 1 <= levels < m = {}", self.m));
        }
        let mut q = ChainRing::new(self.p, self.m - levels)?;
        q.alpha = self.alpha.map(|a| q.reduce(a.0 as u64));
        Ok(q)
    }

    /// The ring one level up, `Z_{p^{m+1}}`, with `alpha` set to `lifted_alpha`.
    pub fn extension(&self, lifted_alpha: Option<RingElem>) -> Result<ChainRing> {
        let r = ChainRing::new(self.p, self.m + 1)?;
        match lifted_alpha {
            Some(a) => r.with_alpha(a),
            None => Ok(r),
        }
    }

    /// The residue field `R / (theta)`.
    pub fn residue_field(&self) -> ChainRing {
        let mut f = ChainRing::new(self.p, 1).expect("p already validated");
        f.alpha = self.alpha.map(|a| f.reduce(a.0 as u64));
        f
    }

    /// Canonical projection onto `R / (theta^{m-levels})`.
    pub fn project(&self, x: RingElem, levels: u32) -> Result<RingElem> {
        let q = self.quotient(levels)?;
        Ok(q.reduce(x.0 as u64))
    }

    /// The section `e: R/I -> R`. Returns the least representative, except
    /// that the image of `alpha` is sent back to `alpha` itself.
    pub fn section_e(&self, xbar: RingElem) -> RingElem {
        let sub = self.modulus / self.p;
        let v = xbar.0 % sub.max(1);
        if let Some(a) = self.alpha {
            if a.0 % sub.max(1) == v && self.m > 1 {
                return a;
            }
        }
        RingElem(v)
    }

    pub fn is_in_minimal_ideal(&self, x: RingElem) -> bool {
        x.0 % self.minimal_ideal_generator().0 == 0
    }

    /// Coordinates of `x = theta^{m-1} u` in the minimal ideal, as `u mod theta`.
    pub fn minimal_ideal_coords(&self, x: RingElem) -> Result<ResidueElem> {
        let g = self.minimal_ideal_generator().0;
        if x.0 % g != 0 {
            return invalid(format!("{} is not in the minimal ideal of {}", x.0, self.name()));
        }
        Ok(ResidueElem(x.0 / g))
    }

    /// Inverse of [`ChainRing::minimal_ideal_coords`].
    pub fn embed_minimal_ideal(&self, u: ResidueElem) -> RingElem {
        RingElem((u.0 % self.p) * self.minimal_ideal_generator().0)
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
