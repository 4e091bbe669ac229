use netbeam_core::poly::Poly;
use netbeam_core::traces::{gamma_lower, gamma_upper, greens_identity, EdgePolynomials};
use netbeam_core::{EdgeSpec, MetricGraph};
use proptest::prelude::*;

fn tree(parents: &[usize], lengths: &[f64]) -> MetricGraph {
    let specs: Vec<EdgeSpec> = parents
        .iter()
        .zip(lengths)
        .enumerate()
        .map(|(i, (&p, &l))| EdgeSpec::new(format!("e{i}"), format!("v{}", p.min(i)), format!("v{}", i + 1), l))
        .collect();
    MetricGraph::new(&specs).unwrap()
}

fn polys(g: &MetricGraph, coeffs: &[Vec<f64>]) -> EdgePolynomials {
    let ps = (0..g.num_edges()).map(|e| Poly::new(coeffs[e].clone())).collect();
    EdgePolynomials::new(g, ps).unwrap()
}

type Case = (usize, Vec<usize>, Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>);

fn case() -> impl Strategy<Value = Case> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(j, e)| {
        let deg = 2 * j + 2;
        (
            Just(j),
            proptest::collection::vec(0usize..4, e),
            proptest::collection::vec(0.3f64..2.5, e),
            proptest::collection::vec(proptest::collection::vec(-2.0f64..2.0, deg), e),
            proptest::collection::vec(proptest::collection::vec(-2.0f64..2.0, deg), e),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn residual_is_roundoff((j, parents, lengths, cu, cv) in case()) {
        let g = tree(&parents, &lengths);
        let t = greens_identity(&polys(&g, &cu), &polys(&g, &cv), j).unwrap();
        prop_assert!(t.residual.abs() <= 1e-10 * t.scale, "residual {} scale {}", t.residual, t.scale);
    }

    #[test]
    fn traces_have_boundary_dimension((j, parents, lengths, cu, _cv) in case()) {
        let g = tree(&parents, &lengths);
        let u = polys(&g, &cu);
        prop_assert_eq!(gamma_lower(&u, j).unwrap().len(), g.boundary_dim(j));
        prop_assert_eq!(gamma_upper(&u, j).unwrap().len(), g.boundary_dim(j));
    }
}

#[test]
fn symmetric_form_part_for_polynomials_vanishing_at_ends() {
    // u = v = x²(1−x)² on [0,1], j = 2: every trace of order < 2 vanishes.
    let g = tree(&[0], &[1.0]);
    let p = Poly::new(vec![0.0, 0.0, 1.0, -2.0, 1.0]);
    let u = EdgePolynomials::new(&g, vec![p]).unwrap();
    let t = greens_identity(&u, &u, 2).unwrap();
    assert!(t.boundary.abs() < 1e-14);
    assert!((t.bulk - t.energy).abs() < 1e-14);
    assert!((t.energy - 4.0 / 5.0).abs() < 1e-14);
}
