//! Self-dual lifts across the minimal ideal of a chain ring.
//!
//! Given a self-dual code over `R/I`, every lift is `e(base) + w` with `w`
//! having entries in the minimal ideal `I = θ^{m-1}R`. Because `I·I = 0`,
//! the Gram matrix of the lift is affine in `w`:
//!
//! ```text
//! G(w)·G(w)ᵗ = G₀G₀ᵗ + G₀·ΔGᵗ + ΔG·G₀ᵗ
//! ```
//!
//! and writing `w = θ^{m-1}·u` turns the self-duality condition into a linear
//! system over `F_q` in `u`. The system is assembled from the generic Gram
//! expansion, so double and bordered codes share one code path.

use crate::circulant::{Border, CircVec, CodeSpec, DenseMatrix};
use crate::error::{invalid, Error, Result};
use crate::linalg::{solve_affine, PrimeField};
use crate::ring::{ChainRing, RingElem};

/// The self-orthogonality residuals `c_0, …, c_{⌊k/2⌋}` of a generating vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualVector {
    pub c: Vec<RingElem>,
}

impl ResidualVector {
    /// Index and value of the first residual outside the minimal ideal.
    pub fn first_outside_ideal(&self, ring: ChainRing) -> Option<(usize, RingElem)> {
        self.c.iter().copied().enumerate().find(|&(_, c)| !ring.is_in_minimal_ideal(c))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }
}

/// `c_0 = 1 + Σ a_i²` and
/// `c_j = Σ_{i<j} α a_i a_{k-j+i} + Σ_{i≥j} a_i a_{i-j}` for `1 ≤ j ≤ ⌊k/2⌋`,
/// evaluated directly on a vector over `R`.
pub fn residuals_of(a: &CircVec) -> ResidualVector {
    let r = a.ring();
    let k = a.k();
    let alpha = a.alpha();
    let v = a.coeffs();
    let mut c = Vec::with_capacity(k / 2 + 1);
    let mut c0 = RingElem::ONE;
    for &x in v {
        c0 = r.add(c0, r.mul(x, x));
    }
    c.push(c0);
    for j in 1..=k / 2 {
        let mut acc = RingElem::ZERO;
        for i in 0..j {
            acc = r.add(acc, r.mul(alpha, r.mul(v[i], v[k - j + i])));
        }
        for i in j..k {
            acc = r.add(acc, r.mul(v[i], v[i - j]));
        }
        c.push(acc);
    }
    ResidualVector { c }
}

/// Residuals of the section lift `e(base)` of a vector over `R/I`.
pub fn residuals(base: &CircVec, ring: ChainRing) -> Result<ResidualVector> {
    Ok(residuals_of(&section_lift_vec(base, ring)?))
}

fn checked_target(base_ring: ChainRing, base_alpha: RingElem, ring: ChainRing) -> Result<RingElem> {
    if ring.m() < 2 {
        return invalid(format!("{ring} has no proper minimal ideal to lift across"));
    }
    let alpha = ring
        .alpha()
        .ok_or_else(|| Error::InvalidArgument(format!("{ring} needs a distinguished alpha for lifting")))?;
    let quotient = ring.quotient(1)?;
    if base_ring != quotient {
        return invalid(format!("base ring {base_ring} is not the residue ring {quotient} of {ring}"));
    }
    if quotient.reduce(alpha.value() as u64) != base_alpha {
        return invalid(format!("alpha = {alpha} does not project to the base alpha {base_alpha}"));
    }
    Ok(alpha)
}

fn section_lift_vec(base: &CircVec, ring: ChainRing) -> Result<CircVec> {
    let alpha = checked_target(base.ring(), base.alpha(), ring)?;
    let coeffs = base.coeffs().iter().map(|&x| ring.section_e(x)).collect();
    CircVec::new(ring, alpha, coeffs)
}

/// Applies the section `e` entrywise, moving a spec from `R/I` to `R`.
pub fn section_lift(base: &CodeSpec, ring: ChainRing) -> Result<CodeSpec> {
    let core = section_lift_vec(base.core(), ring)?;
    match base.border() {
        None => Ok(CodeSpec::double(core)),
        Some(b) => CodeSpec::bordered(
            core,
            Border::new(ring.section_e(b.beta), ring.section_e(b.gamma), ring.section_e(b.delta)),
        ),
    }
}

/// The code position a lift variable perturbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftVar {
    /// Entry `i` of the circulant generating vector.
    Core(usize),
    Beta,
    Gamma,
    Delta,
}

/// A linear system over `F_q` whose solutions `u` are exactly the lift
/// vectors `w = θ^{m-1}·u` that keep the code self-dual.
#[derive(Clone, Debug)]
pub struct LiftSystem {
    ring: ChainRing,
    base: CodeSpec,
    start: CodeSpec,
    vars: Vec<LiftVar>,
    matrix: Vec<Vec<u32>>,
    rhs: Vec<u32>,
}

impl LiftSystem {
    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn base(&self) -> &CodeSpec {
        &self.base
    }

    /// `e(base)`, the lift for `u = 0`.
    pub fn start(&self) -> &CodeSpec {
        &self.start
    }

    pub fn vars(&self) -> &[LiftVar] {
        &self.vars
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[u32] {
        &self.rhs
    }

    /// The lifted spec `e(base) + θ^{m-1}·u`.
    pub fn lift(&self, u: &[u32]) -> CodeSpec {
        let r = self.ring;
        let g = r.minimal_ideal_generator().value() as u64;
        let mut coeffs = self.start.core().coeffs().to_vec();
        let mut border = self.start.border();
        for (&var, &ui) in self.vars.iter().zip(u) {
            let w = r.reduce(g * ui as u64);
            let slot = match (var, border.as_mut()) {
                (LiftVar::Core(i), _) => &mut coeffs[i],
                (LiftVar::Beta, Some(b)) => &mut b.beta,
                (LiftVar::Gamma, Some(b)) => &mut b.gamma,
                (LiftVar::Delta, Some(b)) => &mut b.delta,
                (_, None) => unreachable!("border variable on a double spec"),
            };
            *slot = r.add(*slot, w);
        }
        let core = CircVec::with_parts(r, self.start.alpha(), coeffs);
        match border {
            None => CodeSpec::double(core),
            Some(b) => CodeSpec::bordered(core, b).expect("entries in range"),
        }
    }
}

/// The right-block pattern `∂B/∂w_v` of each lift variable.
fn variable_patterns(spec: &CodeSpec) -> Vec<(LiftVar, Vec<(usize, usize, RingElem)>)> {
    let core = spec.core();
    let kc = core.k();
    let alpha = core.alpha();
    let offset = usize::from(spec.border().is_some());
    let mut out = Vec::new();
    for v in 0..kc {
        let mut cells = Vec::with_capacity(kc);
        for i in 0..kc {
            let j = i + v;
            if j < kc {
                cells.push((i + offset, j + offset, RingElem::ONE));
            } else {
                cells.push((i + offset, j - kc + offset, alpha));
            }
        }
        out.push((LiftVar::Core(v), cells));
    }
    if spec.border().is_some() {
        let k = spec.k();
        out.push((LiftVar::Beta, vec![(0, 0, RingElem::ONE)]));
        out.push((LiftVar::Gamma, (1..k).map(|j| (0, j, RingElem::ONE)).collect()));
        out.push((LiftVar::Delta, (1..k).map(|i| (i, 0, RingElem::ONE)).collect()));
    }
    out
}

/// Assembles the `F_q` system for all self-dual lifts of `base` (over `R/I`) to `ring`.
pub fn build_lift_system(base: &CodeSpec, ring: ChainRing) -> Result<LiftSystem> {
    let start = section_lift(base, ring)?;
    let k = start.k();
    let b0 = start.right_block();

    // G₀G₀ᵗ = I + B₀B₀ᵗ
    let mut gram0 = b0.mul(&b0.transpose())?;
    for i in 0..k {
        gram0.set(i, i, ring.add(gram0.get(i, i), RingElem::ONE));
    }
    if start.border().is_none() {
        let res = residuals_of(start.core());
        if let Some((index, value)) = res.first_outside_ideal(ring) {
            return Err(Error::BaseNotSelfDual { index, value: value.value() });
        }
    }
    for i in 0..k {
        for j in i..k {
            let g = gram0.get(i, j);
            if !ring.is_in_minimal_ideal(g) {
                return Err(Error::BaseNotSelfDual { index: i * k + j, value: g.value() });
            }
        }
    }

    let p = ring.p();
    let field = PrimeField::new(p);
    let patterns = variable_patterns(&start);
    let vars: Vec<LiftVar> = patterns.iter().map(|(v, _)| *v).collect();
    let t = vars.len();

    // Coefficient of u_v in Gram entry (r, s): (B₀Eᵥᵗ + EᵥB₀ᵗ)_{rs} mod θ.
    let mut matrix = Vec::with_capacity(k * (k + 1) / 2);
    let mut rhs = Vec::with_capacity(k * (k + 1) / 2);
    let mut coeff = vec![DenseMatrix::zeros(ring, k, k); t];
    for (v, (_, cells)) in patterns.iter().enumerate() {
        let c = &mut coeff[v];
        for &(pr, pc, val) in cells {
            // E has `val` at (pr, pc):
            // (B₀Eᵗ)_{r,pr} += B₀_{r,pc}·val and (EB₀ᵗ)_{pr,s} += val·B₀_{s,pc}.
            for other in 0..k {
                let x = ring.mul(b0.get(other, pc), val);
                c.set(other, pr, ring.add(c.get(other, pr), x));
                c.set(pr, other, ring.add(c.get(pr, other), x));
            }
        }
    }
    for i in 0..k {
        for j in i..k {
            let row: Vec<u32> = coeff.iter().map(|c| c.get(i, j).value() % p).collect();
            let g = ring.minimal_ideal_coords(gram0.get(i, j))?.value();
            matrix.push(row);
            rhs.push(field.neg(g));
        }
    }

    Ok(LiftSystem { ring, base: base.clone(), start, vars, matrix, rhs })
}

/// The affine solution space of a [`LiftSystem`], enumerable by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSolutionSet {
    q: u32,
    particular: Option<Vec<u32>>,
    basis: Vec<Vec<u32>>,
}

impl LiftSolutionSet {
    pub fn empty(q: u32) -> Self {
        LiftSolutionSet { q, particular: None, basis: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn particular(&self) -> Option<&[u32]> {
        self.particular.as_deref()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of solutions, `q^dim` or 0.
    pub fn count(&self) -> u128 {
        if self.is_empty() {
            0
        } else {
            (self.q as u128).pow(self.basis.len() as u32)
        }
    }

    /// The solution of the given rank in modular Gray-code order over the
    /// kernel coordinates: consecutive ranks differ by one basis vector.
    pub fn element(&self, rank: u128) -> Option<Vec<u32>> {
        let particular = self.particular.as_ref()?;
        if rank >= self.count() {
            return None;
        }
        let q = self.q as u128;
        let field = PrimeField::new(self.q);
        let dim = self.basis.len();
        let mut digits = vec![0u32; dim + 1];
        let mut r = rank;
        for d in digits.iter_mut().take(dim) {
            *d = (r % q) as u32;
            r /= q;
        }
        let mut u = particular.clone();
        for i in 0..dim {
            let gray = field.sub(digits[i], digits[i + 1]);
            if gray != 0 {
                for (x, &b) in u.iter_mut().zip(&self.basis[i]) {
                    *x = field.add(*x, field.mul(gray, b));
                }
            }
        }
        Some(u)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.count()).map(move |r| self.element(r).expect("rank in range"))
    }
}

/// Gaussian elimination over `F_q`.
pub fn solve_lift_system(sys: &LiftSystem) -> LiftSolutionSet {
    let q = sys.ring.q();
    match solve_affine(PrimeField::new(q), &sys.matrix, &sys.rhs, sys.vars.len()) {
        None => LiftSolutionSet::empty(q),
        Some(sol) => LiftSolutionSet { q, particular: Some(sol.particular), basis: sol.basis },
    }
}

/// All lifts `e(base) + θ^{m-1}·u` for `u` in the solution set.
pub fn enumerate_lifts<'a>(sys: &'a LiftSystem, sols: &'a LiftSolutionSet) -> impl Iterator<Item = CodeSpec> + 'a {
    sols.iter().map(move |u| sys.lift(&u))
}

/// Builds, solves and collects the self-dual lifts of `base` to `ring` in one step.
pub fn self_dual_lifts(base: &CodeSpec, ring: ChainRing) -> Result<Vec<CodeSpec>> {
    let sys = build_lift_system(base, ring)?;
    let sols = solve_lift_system(&sys);
    Ok(enumerate_lifts(&sys, &sols).collect())
}

/// `Z_{p^l}` with `α` reduced, for `l` in `2..=m`.
fn level_ring(ring: ChainRing, level: u32) -> Result<ChainRing> {
    let r = ChainRing::new(ring.p(), level)?;
    match ring.alpha() {
        Some(a) => r.with_alpha(r.reduce(a.value() as u64)),
        None => invalid(format!("{ring} needs a distinguished alpha for lifting")),
    }
}

/// All self-dual specs over `ring` projecting to `base` over the residue
/// field, obtained by `m - 1` nested lifting steps.
pub fn nested_lift(base: &CodeSpec, ring: ChainRing) -> Result<Box<dyn Iterator<Item = CodeSpec> + Send>> {
    if ring.m() < 2 {
        return invalid("nested lifting needs m >= 2");
    }
    let first = level_ring(ring, 2)?;
    let sys = build_lift_system(base, first)?;
    let sols = solve_lift_system(&sys);
    let level_two: Vec<CodeSpec> = enumerate_lifts(&sys, &sols).collect();
    let mut stream: Box<dyn Iterator<Item = CodeSpec> + Send> = Box::new(level_two.into_iter());
    for level in 3..=ring.m() {
        let target = level_ring(ring, level)?;
        stream = Box::new(stream.flat_map(move |spec| {
            // intermediate lifts are self-dual, so the system always builds
            let sys = build_lift_system(&spec, target).expect("intermediate lift is self-dual");
            let sols = solve_lift_system(&sys);
            let lifts: Vec<CodeSpec> = enumerate_lifts(&sys, &sols).collect();
            lifts.into_iter()
        }));
    }
    Ok(stream)
}
