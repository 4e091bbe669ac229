use netbeam_core::conditions::{orthonormalize, projector};
use netbeam_core::numerics::{dot, sym_eig};
use netbeam_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn star() -> MetricGraph {
    MetricGraph::new(&[
        EdgeSpec::new("e0", "c", "a", 1.0),
        EdgeSpec::new("e1", "c", "b", 0.8),
        EdgeSpec::new("e2", "c", "d", 1.3),
    ])
    .unwrap()
}

fn interval(l: f64) -> MetricGraph {
    MetricGraph::new(&[EdgeSpec::new("e", "a", "b", l)]).unwrap()
}

fn random_mat(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    Mat::from_rows(&rows).unwrap()
}

/// Random orthonormal `Y_d`, `Y_s` split with `S`, `D` negative semidefinite
/// (optionally skewed) and `Π` positive definite.
fn random_conditions(rng: &mut ChaCha8Rng, g: &MetricGraph, j: usize, skew: f64) -> VertexConditions {
    let dim = g.boundary_dim(j);
    let raw: Vec<Vec<f64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let q = orthonormalize(dim, &raw);
    let nd = rng.gen_range(0..=2usize);
    let ns = rng.gen_range(2..=dim - nd - 1);
    let yd: Vec<Vec<f64>> = (0..nd).map(|k| q.column(k)).collect();
    let ys: Vec<Vec<f64>> = (nd..nd + ns).map(|k| q.column(k)).collect();
    let nsd = |rng: &mut ChaCha8Rng, n: usize| {
        let r = random_mat(rng, n);
        let k = random_mat(rng, n);
        r.tr_matmul(&r).scale(-1.0).add(&k.sub(&k.transpose()).scale(skew))
    };
    let s = nsd(rng, ns);
    let d = nsd(rng, nd);
    let r = random_mat(rng, nd);
    let pi = r.tr_matmul(&r).add(&Mat::identity(nd));
    VertexConditions::from_spanning_sets(j, dim, &yd, &ys, Some(s), Some(d), Some(pi)).unwrap()
}

#[test]
fn symmetry_of_operator_tracks_symmetry_of_conditions() {
    let g = star();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for j in 1..=2 {
        for trial in 0..10 {
            let skew = if trial % 2 == 0 { 0.0 } else { 0.5 };
            let vc = random_conditions(&mut rng, &g, j, skew);
            let op = DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, 3).unwrap()).unwrap();
            let asym = op.a_red().relative_asymmetry();
            assert_eq!(vc.validate().symmetric(), skew == 0.0);
            if skew == 0.0 {
                assert!(asym < 1e-10, "j={j} trial={trial} asym={asym}");
            } else {
                assert!(asym > 1e-6, "j={j} trial={trial} asym={asym}");
            }
        }
    }
}

#[test]
fn dissipative_conditions_give_accretive_forms() {
    let g = star();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for j in 1..=2 {
        for _ in 0..8 {
            let vc = random_conditions(&mut rng, &g, j, 0.3);
            let op = DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, 3).unwrap()).unwrap();
            let sym = op.a_red().symmetric_part();
            let (values, _) = sym_eig(&sym).unwrap();
            let lmin = values.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(lmin >= -1e-9 * sym.max_abs(), "λ_min of Re A = {lmin}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projectors_are_symmetric_idempotent(vs in proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, 6), 0..5)) {
        let b = orthonormalize(6, &vs);
        prop_assert!(b.cols() <= vs.len());
        let p = projector(&b);
        prop_assert!(p.sub(&p.transpose()).max_abs() < 1e-12);
        prop_assert!(p.matmul(&p).sub(&p).max_abs() < 1e-12);
        prop_assert!(b.tr_matmul(&b).sub(&Mat::identity(b.cols())).max_abs() < 1e-12);
        for v in &vs {
            let pv = p.mul_vec(v);
            let err: f64 = pv.iter().zip(v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            prop_assert!(err < 1e-9);
        }
    }
}

#[test]
fn hinged_eigenvalues_converge_at_fourth_order() {
    let g = interval(PI);
    let vc = preset(&Preset::Hinged, &g, 2).unwrap();
    let errs: Vec<f64> = [4usize, 8, 16, 32]
        .iter()
        .map(|&n| {
            let op = DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, n).unwrap()).unwrap();
            (op.eigen().unwrap().values[2] - 81.0).abs() / 81.0
        })
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 3.5, "errors {errs:?}");
    }
}

#[test]
fn heat_flow_dissipates() {
    let g = star();
    let vc = preset(&Preset::DynamicStar { vertex: "c".into() }, &g, 2).unwrap();
    let op = DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, 6).unwrap()).unwrap();
    let sp = Spectral::new(&op).unwrap();
    let f = InitialData::Bump { edge: Some(1), center: 0.4, width: 0.3 }.resolve(&sp).unwrap().coeffs;
    let times: Vec<f64> = (0..40).map(|i| 1e-4 * 1.3f64.powi(i)).collect();
    let s = sp.heat(&f, &times).unwrap();
    let norm = |c: &[f64]| dot(c, &op.m_red().mul_vec(c));
    for w in s.windows(2) {
        assert!(norm(&w[1].coeffs) <= norm(&w[0].coeffs) * (1.0 + 1e-12));
        assert!(w[1].potential <= w[0].potential * (1.0 + 1e-12) + 1e-14);
    }
}

#[test]
fn damping_drains_energy() {
    let g = star();
    let vc = preset(&Preset::DynamicStar { vertex: "c".into() }, &g, 2).unwrap();
    let op = DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, 6).unwrap()).unwrap();
    let sp = Spectral::new(&op).unwrap();
    let f = InitialData::Sine(1).resolve(&sp).unwrap().coeffs;
    let v = InitialData::Bump { edge: Some(0), center: 0.5, width: 0.4 }.resolve(&sp).unwrap().coeffs;
    let times: Vec<f64> = (0..100).map(|i| 0.05 * i as f64).collect();
    let s = sp.damped(&f, &v, 0.01, &times).unwrap();
    for w in s.windows(2) {
        assert!(w[1].total <= w[0].total * (1.0 + 1e-10));
    }
    assert!(s.last().unwrap().total < 0.9 * s[0].total);
}
