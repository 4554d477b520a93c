//! Dense linear algebra over a prime field `F_p`.

/// Arithmetic modulo a prime `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        PrimeField { p }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        (x + y) % self.p
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        (x + self.p - y % self.p) % self.p
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        x * y % self.p
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        (self.p - x % self.p) % self.p
    }

    pub fn inv(&self, x: u32) -> u32 {
        debug_assert!(x % self.p != 0);
        let (mut base, mut e, mut acc) = (x % self.p, self.p - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// `{ particular + span(basis) }`, the solution set of a consistent system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<u32>,
    pub basis: Vec<Vec<u32>>,
}

/// Solves `rows · u = rhs` over `F_p` by Gauss–Jordan elimination.
/// Returns `None` when the system is inconsistent.
pub fn solve_affine(field: PrimeField, rows: &[Vec<u32>], rhs: &[u32], vars: usize) -> Option<AffineSolution> {
    let mut aug: Vec<Vec<u32>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row: Vec<u32> = r.iter().map(|&x| x % field.p()).collect();
            row.push(b % field.p());
            row
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..vars {
        let Some(pr) = (rank..aug.len()).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(rank, pr);
        let inv = field.inv(aug[rank][col]);
        for x in aug[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..aug.len() {
            if r != rank && aug[r][col] != 0 {
                let factor = aug[r][col];
                for c in col..=vars {
                    let sub = field.mul(factor, aug[rank][c]);
                    aug[r][c] = field.sub(aug[r][c], sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == aug.len() {
            break;
        }
    }

    if aug[rank..].iter().any(|row| row[vars] != 0) {
        return None;
    }

    let mut particular = vec![0; vars];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][vars];
    }
    let mut basis = Vec::new();
    for free in (0..vars).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; vars];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(aug[r][free]);
        }
        basis.push(v);
    }
    Some(AffineSolution { particular, basis })
}
