use num_bigint::BigInt;
use proptest::prelude::*;

use polyspaces::confhomology::{build_complex, homology_conf, homology_conf_full, FoxNeuwirthComplex, P_MAX};
use polyspaces::exactalg::{homology_of_complex, smith_normal_form, AbelianGroup, IntMatrix};

fn chain_maps(c: &FoxNeuwirthComplex) -> Vec<IntMatrix> {
    let p = c.p();
    let mut maps = vec![IntMatrix::zeros(0, c.cells_in(p + 1).len())];
    maps.extend((p + 2..=2 * p).map(|k| c.boundary(k).unwrap().clone()));
    maps
}

/// Applies a permutation and sign change to the basis in every degree.
fn rebase(maps: &[IntMatrix], perms: &[Vec<usize>], signs: &[Vec<bool>]) -> Vec<IntMatrix> {
    maps.iter()
        .enumerate()
        .map(|(k, m)| {
            let rows: Vec<usize> = if k == 0 { vec![] } else { perms[k - 1].clone() };
            let p = m.permuted(&rows, &perms[k]);
            let mut out = vec![vec![BigInt::from(0); p.cols()]; p.rows()];
            for (i, row) in out.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    let flip = signs[k][j] ^ (k > 0 && signs[k - 1][i]);
                    *entry = if flip { -p[(i, j)].clone() } else { p[(i, j)].clone() };
                }
            }
            if p.rows() == 0 {
                IntMatrix::zeros(0, p.cols())
            } else {
                IntMatrix::from_rows(&out)
            }
        })
        .collect()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        v.swap(i, (s >> 33) as usize % (i + 1));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homology_ignores_basis_order_and_signs(p in 2usize..=6, seed in any::<u64>()) {
        let c = build_complex(p).unwrap();
        let maps = chain_maps(&c);
        let sizes: Vec<usize> = maps.iter().map(IntMatrix::cols).collect();
        let perms: Vec<Vec<usize>> = sizes.iter().enumerate().map(|(k, &n)| shuffled(n, seed ^ k as u64)).collect();
        let signs: Vec<Vec<bool>> = sizes
            .iter()
            .enumerate()
            .map(|(k, &n)| (0..n).map(|j| (seed >> ((j + 3 * k) % 64)) & 1 == 1).collect())
            .collect();
        let other = rebase(&maps, &perms, &signs);
        prop_assert_eq!(homology_of_complex(&maps).unwrap(), homology_of_complex(&other).unwrap());
    }

    #[test]
    fn smith_form_is_a_unimodular_factorization(
        rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 4), 1..5)
    ) {
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&(&snf.left * &m) * &snf.right, snf.diagonal.clone());
        prop_assert_eq!(snf.left.determinant().magnitude().clone(), 1u32.into());
        prop_assert_eq!(snf.right.determinant().magnitude().clone(), 1u32.into());
        let inv = snf.invariant_factors();
        for w in inv.windows(2) {
            prop_assert!(w[0] != BigInt::from(0) && (&w[1] % &w[0]) == BigInt::from(0));
        }
    }
}

#[test]
fn configuration_homology_through_the_limit() {
    let z = AbelianGroup::free(1);
    let all: Vec<Vec<AbelianGroup>> = (1..=P_MAX).map(|p| homology_conf_full(p).unwrap()).collect();
    for (i, h) in all.iter().enumerate() {
        let p = i + 1;
        assert_eq!(h[0], z);
        if p >= 2 {
            assert_eq!(h[1], z);
        }
        assert!(h[p..].iter().all(AbelianGroup::is_trivial), "p = {p}");
        // rationally C_p looks like a circle
        assert!(h[2..].iter().all(|g| g.free_rank() == 0), "p = {p}");
        if p < P_MAX {
            for j in 0..p {
                if p >= 2 * j {
                    assert_eq!(h[j], all[i + 1][j], "H_{j} at p = {p}");
                }
            }
        }
    }
    assert_eq!(homology_conf(5).unwrap()[2], AbelianGroup::cyclic(2));
    assert_eq!(homology_conf(6).unwrap()[3], AbelianGroup::cyclic(2));
}
