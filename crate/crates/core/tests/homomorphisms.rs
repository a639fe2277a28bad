use qkneser::homs::*;
use qkneser::kneser::build_q_kneser;
use qkneser::subspaces::Subspace;

fn check(source: (usize, usize, u32), f: &VertexMap, induced: bool) {
    let g = build_q_kneser(source.0, source.1, source.2).unwrap();
    let report = verify_homomorphism(&g, f, &f.image_adjacency(), induced, 1).unwrap();
    assert!(
        report.is_hom(),
        "{} on {source:?}: {:?}",
        f.name,
        report.verdict
    );
    if induced {
        assert!(
            report.is_induced(),
            "{} on {source:?}: {:?}",
            f.name,
            report.induced
        );
    }
}

fn grid() -> impl Iterator<Item = (usize, usize, u32)> {
    [2u32, 3]
        .into_iter()
        .flat_map(|q| (1..=2).flat_map(move |k| (2 * k..=5).map(move |v| (v, k, q))))
}

#[test]
fn extension_on_grid() {
    for (v, k, q) in grid() {
        let f = extension_map(v, k, q).unwrap();
        assert_eq!(f.image_count(), f.len());
        check((v, k, q), &f, true);
    }
}

#[test]
fn subfield_on_grid() {
    for (v, k, q) in grid() {
        check((v, k, q), &subfield_map(v, k, q, 2).unwrap(), false);
    }
}

#[test]
fn field_reduction_on_grid() {
    check((2, 1, 4), &field_reduction_map(2, 1, 2, 2).unwrap(), true);
    for (v, k, q) in grid() {
        let big = q * q;
        if q == 3 && v > 4 {
            continue;
        }
        let f = field_reduction_map(v, k, q, 2).unwrap();
        assert!(f
            .labels
            .iter()
            .all(|l| l.subspace.as_ref().unwrap().dim() == 2 * k));
        check((v, k, big), &f, true);
    }
}

#[test]
fn echelon_shadow_on_grid() {
    for (v, k, q) in grid().filter(|&(_, k, _)| k == 2) {
        let f = echelon_shadow_map(v, k, q).unwrap();
        assert!(f
            .labels
            .iter()
            .all(|l| l.subspace.as_ref().map(Subspace::dim) == Some(k - 1)));
        check((v, k, q), &f, false);
    }
}

#[test]
fn point_set_on_grid() {
    for (v, k, q) in grid() {
        let f = point_set_map(v, k, q, 1_000_000).unwrap();
        let size = (0..k as u32).map(|i| (q as u64).pow(i)).sum::<u64>() as usize;
        assert!(f.labels.iter().all(|l| l.points.len() == size));
        check((v, k, q), &f, true);
    }
}
