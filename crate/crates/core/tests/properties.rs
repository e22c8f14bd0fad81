use num_bigint::BigInt;
use proptest::prelude::*;

use ncgram::grammat::{build_matrix, det_bareiss, MatrixKind, Specialization};
use ncgram::ncpart::{enumerate_nc, Kind, Partition};
use ncgram::polyalg::{chebyshev_t, Monomial, Poly};
use ncgram::tldiag::{self, glue_count_b, glue_cycles, iota_b};

/// Restricted growth string to a type A partition.
fn from_rgs(rgs: &[usize]) -> Partition {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (pos, &b) in rgs.iter().enumerate() {
        if b == blocks.len() {
            blocks.push(Vec::new());
        }
        blocks[b].push(pos + 1);
    }
    Partition::from_position_blocks(Kind::A, rgs.len(), blocks).unwrap()
}

fn rgs(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, n).prop_map(|raw| {
        let mut out = Vec::with_capacity(raw.len());
        let mut next = 0;
        for r in raw {
            let b = r.min(next);
            if b == next {
                next += 1;
            }
            out.push(b);
        }
        out
    })
}

fn three_partitions() -> impl Strategy<Value = (Partition, Partition, Partition)> {
    (1usize..=7).prop_flat_map(|n| (rgs(n), rgs(n), rgs(n))).prop_map(|(a, b, c)| (from_rgs(&a), from_rgs(&b), from_rgs(&c)))
}

/// Every block of `fine` lies inside one block of `coarse`.
fn refines(fine: &Partition, coarse: &Partition) -> bool {
    let idx = coarse.block_index();
    fine.position_blocks().iter().all(|b| b.iter().all(|&p| idx[p - 1] == idx[b[0] - 1]))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..5), -9i64..10), 0..6)
        .prop_map(|terms| Poly::from_terms(terms.into_iter().map(|((a, d), c)| (Monomial::new(a, d), c))))
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
    if m.is_empty() {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for (j, head) in m[0].iter().enumerate() {
        if head.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = head * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_is_a_lattice_join((p, q, r) in three_partitions()) {
        let pq = p.join(&q).unwrap();
        prop_assert_eq!(&pq, &q.join(&p).unwrap());
        prop_assert_eq!(p.join(&p).unwrap(), p.clone());
        prop_assert_eq!(pq.join(&r).unwrap(), p.join(&q.join(&r).unwrap()).unwrap());
        prop_assert!(refines(&p, &pq) && refines(&q, &pq));
        prop_assert_eq!(p.join(&Partition::finest(Kind::A, p.n())).unwrap(), p.clone());
        // Monotone in each argument.
        let top = p.join(&q).unwrap().join(&r).unwrap();
        prop_assert!(refines(&pq, &top));
    }

    #[test]
    fn join_of_type_b_partitions_is_symmetric(n in 1usize..=4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let parts = enumerate_nc(Kind::B, n).unwrap();
        let (p, q) = (&parts[i.index(parts.len())], &parts[j.index(parts.len())]);
        let pq = p.join(q).unwrap();
        prop_assert!(pq.is_symmetric());
        prop_assert_eq!(pq.bk(), pq.bk0() + 2 * pq.nzbk());
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Poly::zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in -6i64..7, y in -6i64..7) {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        prop_assert_eq!((&a * &b).eval_int(&x, &y), a.eval_int(&x, &y) * b.eval_int(&x, &y));
        prop_assert_eq!((&a + &b).eval_int(&x, &y), a.eval_int(&x, &y) + b.eval_int(&x, &y));
        prop_assert_eq!(a.substitute_squares().unwrap().eval_int(&x, &y), a.eval_int(&(&x * &x), &(&y * &y)));
    }

    #[test]
    fn det_agrees_with_cofactor_expansion(dim in 0usize..5, entries in prop::collection::vec(poly(), 16)) {
        let m: Vec<Vec<Poly>> = (0..dim).map(|r| entries[r * 4..r * 4 + dim].to_vec()).collect();
        prop_assert_eq!(det_bareiss(m.clone()).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn det_invariant_under_basis_permutation(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let m = build_matrix(MatrixKind::JB, 2).unwrap().to_polys(Specialization { squares: true, alpha_one: false });
        let permuted: Vec<Vec<Poly>> = perm.iter().map(|&r| perm.iter().map(|&c| m[r][c].clone()).collect()).collect();
        prop_assert_eq!(det_bareiss(permuted).unwrap(), det_bareiss(m).unwrap());
    }

    #[test]
    fn gluing_is_half_turn_invariant(n in 1usize..=4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let parts = enumerate_nc(Kind::B, n).unwrap();
        let b1 = iota_b(&parts[i.index(parts.len())]).unwrap();
        let b2 = iota_b(&parts[j.index(parts.len())]).unwrap();
        let cycles = glue_cycles(&b1, &b2).unwrap();
        let mut sets: Vec<Vec<usize>> = cycles.iter().map(|c| { let mut s = c.clone(); s.sort(); s }).collect();
        sets.sort();
        let mut turned: Vec<Vec<usize>> = sets.iter().map(|c| { let mut s: Vec<usize> = c.iter().map(|&p| b1.half_turn(p)).collect(); s.sort(); s }).collect();
        turned.sort();
        prop_assert_eq!(sets, turned);
        let c = glue_count_b(&b1, &b2).unwrap();
        prop_assert_eq!(c, glue_count_b(&b2, &b1).unwrap());
        prop_assert_eq!(cycles.len(), c.c0 + 2 * c.cd);
        let a = tldiag::to_annular(&b1).unwrap();
        prop_assert_eq!(tldiag::from_annular(&a).unwrap(), b1);
    }
}

#[test]
fn chebyshev_at_five_halves() {
    // 2^i T_i(5/2) = 4^i + 1, evaluated as sum c_k 5^k 2^(i-k).
    for i in 0..=12usize {
        let t = chebyshev_t(i);
        let mut total = BigInt::from(0);
        for (m, c) in t.terms() {
            let k = m.ed as usize;
            assert!(k <= i);
            total += c * num_traits::pow(BigInt::from(5), k) * num_traits::pow(BigInt::from(2), i - k);
        }
        assert_eq!(total, num_traits::pow(BigInt::from(4), i) + 1, "i={i}");
    }
}

#[test]
fn refined_counts_are_symmetric() {
    // #(bk0 = 1, nzbk = k) = #(bk0 = 0, nzbk = n - k)
    for n in 1..=6 {
        let parts = enumerate_nc(Kind::B, n).unwrap();
        let count = |z: usize, k: usize| parts.iter().filter(|p| p.bk0() == z && p.nzbk() == k).count();
        for k in 0..=n {
            assert_eq!(count(1, k), count(0, n - k), "n={n} k={k}");
        }
    }
}
