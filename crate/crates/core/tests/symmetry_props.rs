//! Basis independence, detection and spectral consequences of the symmetries.

mod common;

use common::{random_matrix, random_symmetric_family, rng, widen};
use nhtopo::linalg::eigenvalues;
use nhtopo::models::class_representative;
use nhtopo::symmetry::{detect_class, symmetrize, verify_spec, SymmetryClassId, SymmetrySpec};
use nhtopo::{c64, ComplexMatrix, HamiltonianFamily, C64};
use proptest::prelude::*;

fn random_unitary(seed: u64, n: usize) -> ComplexMatrix {
    let a = random_matrix(&mut rng(seed), n);
    ComplexMatrix::new(a.into_inner().qr().q()).unwrap()
}

fn class_strategy() -> impl Strategy<Value = SymmetryClassId> {
    let all = SymmetryClassId::all();
    (0..all.len()).prop_map(move |i| all[i])
}

fn spec_of(class: SymmetryClassId) -> SymmetrySpec {
    let spec = class_representative(class);
    let d = spec.ops().first().map_or(1, |o| o.dim());
    widen(&spec, if d < 2 { 2 } else { d })
}

fn size_of(spec: &SymmetrySpec) -> usize {
    spec.ops().first().map_or(2, |o| o.dim())
}

/// Pairs every element of `a` with a distinct element of `b` greedily and
/// returns the largest distance used.
fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn residuals_do_not_depend_on_the_basis(class in class_strategy(), seed in any::<u64>()) {
        let spec = spec_of(class);
        let n = size_of(&spec);
        let h = random_symmetric_family(&mut rng(seed), &spec, n, 6);
        let v = random_unitary(seed ^ 0x5eed, n);
        let h_new = h.map(|hk| &(&v.adjoint() * hk) * &v);
        let spec_new = spec.in_basis(&v).unwrap();
        let before = verify_spec(&h, &spec).unwrap();
        let after = verify_spec(&h_new, &spec_new).unwrap();
        for ((k, r0), (_, r1)) in before.iter().zip(&after) {
            prop_assert!(*r0 < 1e-10 && *r1 < 1e-10, "{k}: {r0:.1e} vs {r1:.1e}");
        }
    }

    #[test]
    fn detected_class_does_not_depend_on_the_basis(class in class_strategy(), seed in any::<u64>()) {
        let spec = spec_of(class);
        let v = random_unitary(seed, size_of(&spec));
        prop_assert_eq!(detect_class(&spec.in_basis(&v).unwrap()).unwrap(), class);
    }

    #[test]
    fn spectra_are_closed_under_each_symmetry(class in class_strategy(), seed in any::<u64>()) {
        let spec = spec_of(class);
        let n = size_of(&spec);
        let h = random_symmetric_family(&mut rng(seed), &spec, n, 6);
        for op in spec.ops() {
            let kind = op.kind();
            let conj = kind.phi() * kind.kappa() == -1;
            for flat in 0..h.len() {
                let image: Vec<C64> = eigenvalues(h.sample(flat))
                    .into_iter()
                    .map(|e| c64(kind.c() as f64, 0.0) * if conj { e.conj() } else { e })
                    .collect();
                let target = if kind.is_antiunitary() { h.negated_index(flat) } else { flat };
                let spectrum = eigenvalues(h.sample(target));
                let d = multiset_distance(&image, &spectrum);
                prop_assert!(d < 1e-6, "{class} {kind}: spectra differ by {d:.1e}");
            }
        }
    }
}

#[test]
fn symmetrized_families_satisfy_every_representative() {
    let mut r = rng(11);
    for class in SymmetryClassId::all() {
        let spec = spec_of(class);
        let n = size_of(&spec);
        let raw = HamiltonianFamily::from_samples(2, 4, (0..16).map(|_| random_matrix(&mut r, n)).collect()).unwrap();
        let h = symmetrize(&raw, &spec).unwrap();
        for (kind, res) in verify_spec(&h, &spec).unwrap() {
            assert!(res < 1e-12, "{class} {kind}: residual {res:.1e}");
        }
    }
}

#[test]
fn symmetrizing_twice_changes_nothing() {
    let mut r = rng(12);
    for class in SymmetryClassId::all() {
        let spec = spec_of(class);
        let n = size_of(&spec);
        let raw = HamiltonianFamily::from_samples(1, 6, (0..6).map(|_| random_matrix(&mut r, n)).collect()).unwrap();
        let once = symmetrize(&raw, &spec).unwrap();
        let twice = symmetrize(&once, &spec).unwrap();
        let diff = once.samples().iter().zip(twice.samples()).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
        assert!(diff < 1e-12, "{class}: {diff:.1e}");
    }
}
