mod common;

use circlift::circulant::{is_alpha_circulant, t_alpha, CircVec, DenseMatrix};
use circlift::{ChainRing, RingElem};
use common::*;
use proptest::prelude::*;

/// `(order, α, k, f, g, λ)` over rings with involutive units.
fn instance() -> impl Strategy<Value = (u32, u32, usize, Vec<u32>, Vec<u32>, u32)> {
    (prop_oneof![Just((2u32, 1u32)), Just((4, 1)), Just((4, 3)), Just((8, 5)), Just((9, 8)), Just((27, 26))], 1usize..9)
        .prop_flat_map(|((order, alpha), k)| {
            (
                Just(order),
                Just(alpha),
                Just(k),
                prop::collection::vec(0..order, k),
                prop::collection::vec(0..order, k),
                0..order,
            )
        })
}

fn dense(ring: ChainRing, m: &Mat) -> DenseMatrix {
    let rows: Vec<Vec<u32>> = m.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    DenseMatrix::from_rows(ring, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cir_is_a_ring_homomorphism((order, alpha, k, f, g, lambda) in instance()) {
        let r = za(order, alpha);
        let (a, b) = (cv(r, alpha, &f), cv(r, alpha, &g));
        let q = order as u64;
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(sum.cir(), a.cir().add(&b.cir()).unwrap());
        let l = r.elem(lambda).unwrap();
        prop_assert_eq!(a.scale(l).cir(), a.cir().scale(l));
        let prod = a.circ_mul(&b).unwrap();
        prop_assert_eq!(prod.cir(), a.cir().mul(&b.cir()).unwrap());
        // and against the independent construction
        let naive = naive_mul(q, &naive_cir(q, alpha as u64, &f), &naive_cir(q, alpha as u64, &g));
        prop_assert_eq!(dense(r, &naive), prod.cir());
        prop_assert_eq!(a.cir(), dense(r, &naive_cir(q, alpha as u64, &f)));
        prop_assert_eq!(k, prod.k());
    }

    #[test]
    fn t_alpha_power_is_scalar((order, alpha, k, _f, _g, _l) in instance()) {
        let r = za(order, alpha);
        let a = r.elem(alpha).unwrap();
        let t = t_alpha(r, k, a);
        prop_assert_eq!(t.pow(k).unwrap(), DenseMatrix::scalar(r, k, a));
        let q = order as u64;
        let mut shift = vec![0u32; k];
        if k > 1 { shift[1] = 1 } else { shift[0] = alpha }
        prop_assert_eq!(t, dense(r, &naive_cir(q, alpha as u64, &shift)));
    }

    #[test]
    fn commuting_with_t_characterizes_circulants(
        (order, alpha, k, f, _g, _l) in instance(),
        entries in prop::collection::vec(0u32..1000, 64),
        perturb in 0usize..3,
    ) {
        let r = za(order, alpha);
        let q = order as u64;
        let mut m = naive_cir(q, alpha as u64, &f);
        match perturb {
            0 => {}
            1 => {
                let (i, j) = (entries[0] as usize % k, entries[1] as usize % k);
                m[i][j] = (m[i][j] + 1 + entries[2] as u64 % (q - 1)) % q;
            }
            _ => {
                for (x, e) in m.iter_mut().flatten().zip(&entries) {
                    *x = *e as u64 % q;
                }
            }
        }
        let first: Vec<u32> = m[0].iter().map(|&x| x as u32).collect();
        let is_circ = m == naive_cir(q, alpha as u64, &first);
        let a = dense(r, &m);
        prop_assert_eq!(is_alpha_circulant(&a, r.elem(alpha).unwrap()), is_circ);
        let t = dense(r, &naive_cir(q, alpha as u64, &{
            let mut s = vec![0u32; k];
            if k > 1 { s[1] = 1 } else { s[0] = alpha }
            s
        }));
        let commutes = naive_mul(q, &m, &to_rows(&t)) == naive_mul(q, &to_rows(&t), &m);
        prop_assert_eq!(commutes, is_circ);
    }

    #[test]
    fn projection_commutes_with_products((order, alpha, _k, f, g, _l) in instance()) {
        let r = za(order, alpha);
        if r.m() > 1 {
            let field = r.residue_field();
            let (a, b) = (cv(r, alpha, &f), cv(r, alpha, &g));
            let lhs = a.circ_mul(&b).unwrap().project_to(field).unwrap();
            let rhs = a.project_to(field).unwrap().circ_mul(&b.project_to(field).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

fn to_rows(d: &DenseMatrix) -> Mat {
    d.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect()
}

#[test]
fn spec_examples() {
    let r = za(4, 3);
    let a = CircVec::from_values(r, 3, &[1, 3, 3, 0]).unwrap();
    let rows = a.cir().to_rows();
    assert_eq!(rows, vec![vec![1, 3, 3, 0], vec![0, 1, 3, 3], vec![1, 0, 1, 3], vec![1, 1, 0, 1]]);
    assert!(double(r, 3, &[1, 3, 3, 0]).is_self_dual());
    assert!(!double(r, 3, &[1, 0]).is_self_dual());
    assert!(double(z(2), 1, &[1, 1, 1, 0]).is_self_dual());
    let one = CircVec::from_values(r, 3, &[1]).unwrap();
    assert_eq!(one.cir(), DenseMatrix::identity(r, 1));
    assert_eq!(t_alpha(r, 1, RingElem::ONE), DenseMatrix::identity(r, 1));
}
