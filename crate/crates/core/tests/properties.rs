use num_complex::Complex64;
use proptest::prelude::*;
use quatcg::group::{builtin, validate, BuiltinGroup};
use quatcg::numerics::snap::{parse_label, symbolic_labels};
use quatcg::numerics::{hermitian_eig, kron, snap, CMatrix, Snapped, Tolerances};
use quatcg::rep::{builtin_irreps, decompose, CharacterTable};

fn matrix(max: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), r * c).prop_map(move |v| {
            CMatrix::new(
                r,
                c,
                v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(),
            )
            .unwrap()
        })
    })
}

fn hermitian(max: usize) -> impl Strategy<Value = CMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
            let a = CMatrix::new(
                n,
                n,
                v.into_iter().map(|(x, y)| Complex64::new(x, y)).collect(),
            )
            .unwrap();
            let h = &a + &a.adjoint();
            h.scale(Complex64::new(0.5, 0.0))
        })
    })
}

fn group() -> impl Strategy<Value = BuiltinGroup> {
    prop::sample::select(BuiltinGroup::ALL.to_vec())
}

proptest! {
    #[test]
    fn kron_is_associative(a in matrix(3), b in matrix(3), c in matrix(3)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in matrix(3), b in matrix(3)) {
        let (c, d) = (a.adjoint(), b.adjoint());
        let left = &kron(&a, &b) * &kron(&c, &d);
        let right = kron(&(&a * &c), &(&b * &d));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn eig_reconstructs(m in hermitian(12)) {
        let eig = hermitian_eig(&m, &Tolerances::default()).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&m) <= 1e-8 * m.max_abs().max(1.0));
        prop_assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        let n = m.rows();
        prop_assert!((&eig.vectors.adjoint() * &eig.vectors).max_abs_diff(&CMatrix::identity(n)) <= 1e-10);
    }

    #[test]
    fn snap_round_trips(i in 0usize..64, dx in -1e-12f64..1e-12, dy in -1e-12f64..1e-12) {
        let labels: Vec<&str> = symbolic_labels().collect();
        let label = labels[i % labels.len()];
        let z = parse_label(label).unwrap() + Complex64::new(dx, dy);
        prop_assert_eq!(snap(z, &Tolerances::default()), Snapped::Symbolic(label));
    }

    #[test]
    fn decompose_is_symmetric_and_counts_dimension(which in group(), a in 0usize..17, b in 0usize..17) {
        let irreps = builtin_irreps(which);
        let t = CharacterTable::from_irreps(&irreps).unwrap();
        let (a, b) = (a % t.len(), b % t.len());
        let ab = decompose(&t, a, b).unwrap();
        prop_assert_eq!(&ab.m, &decompose(&t, b, a).unwrap().m);
        prop_assert_eq!(ab.dimension(t.dims()), t.dim(a) * t.dim(b));
    }

    #[test]
    fn perturbed_tables_are_rejected(which in group(), j in 0usize..32, k in 0usize..32, shift in 1usize..32) {
        let mut table = builtin(which).table().to_vec();
        let n = table.len();
        let (j, k) = (j % n, k % n);
        table[j][k] = (table[j][k] + 1 + shift % (n - 1)) % n;
        prop_assert!(validate(&table).is_err());
    }
}
