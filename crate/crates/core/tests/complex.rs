mod common;

use strat_sheaf::complex::{catalog, cone, example, join, parse_space, product, suspension, StratifiedComplex};
use strat_sheaf::Error;

use common::{all_simplices, betti, link_betti};

fn expected_betti(name: &str) -> Vec<usize> {
    match name {
        "s1" => vec![1, 1],
        "s2" => vec![1, 0, 1],
        "s3" => vec![1, 0, 0, 1],
        "s4" => vec![1, 0, 0, 0, 1],
        "t2" => vec![1, 2, 1],
        "cp2" => vec![1, 0, 1, 0, 1],
        "s1xs3" => vec![1, 1, 0, 1, 1],
        "s2xs2" => vec![1, 0, 2, 0, 1],
        "susp_s2" => vec![1, 0, 0, 1],
        "susp_t2" => vec![1, 0, 2, 1],
        "susp_cp2" => vec![1, 0, 0, 1, 0, 1],
        "susp_s1xs3" => vec![1, 0, 1, 0, 1, 1],
        "susp_s2xs2" => vec![1, 0, 0, 2, 0, 1],
        other => panic!("unexpected catalog entry {other}"),
    }
}

#[test]
fn catalog_spaces_have_the_right_homology() {
    for entry in catalog() {
        let x = entry.build();
        x.validate().unwrap();
        let b = betti(&all_simplices(&x));
        assert_eq!(b, expected_betti(entry.name), "{}", entry.name);
        let lib = x.cochain_complex().cohomology_dims().to_vec(x.dim() + 1);
        assert_eq!(lib, b, "{}", entry.name);
        let chi: i64 = b.iter().enumerate().map(|(j, &d)| if j % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        assert_eq!(x.euler_characteristic(), chi, "{}", entry.name);
    }
}

#[test]
fn minimal_triangulations() {
    assert_eq!(example("t2").unwrap().f_vector(), vec![7, 21, 14]);
    assert_eq!(example("cp2").unwrap().f_vector(), vec![9, 36, 84, 90, 36]);
}

#[test]
fn suspension_poles_are_the_singular_stratum() {
    let x = example("susp_t2").unwrap();
    assert_eq!(x.dim(), 3);
    assert_eq!(x.singular_codims(), vec![3]);
    let comps = x.stratum_components(3).unwrap();
    assert_eq!(comps.len(), 2);
    for c in &comps {
        assert_eq!(c.simplices.len(), 1);
        assert_eq!(x.simplex_dim(c.base), 0);
        assert_eq!(link_betti(&x, c.base), vec![1, 2, 1]);
        let z = x.link_of(c.base).unwrap();
        assert_eq!(z.f_vector(), vec![7, 21, 14]);
    }
    let names: Vec<&str> = comps.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(names, ["k3-c0", "k3-c1"]);
}

#[test]
fn manifold_suspension_of_a_sphere_is_stratified_at_its_poles() {
    let x = suspension(&example("s2").unwrap()).unwrap();
    assert_eq!(x.singular_codims(), vec![3]);
    for c in x.stratum_components(3).unwrap() {
        assert_eq!(link_betti(&x, c.base), vec![1, 0, 1]);
    }
}

#[test]
fn constructions_compose() {
    let s1 = example("s1").unwrap();
    let j = join(&s1, &s1).unwrap();
    assert_eq!(betti(&all_simplices(&j)), vec![1, 0, 0, 1]);
    // each factor is a codimension-two stratum with a circle as link
    assert_eq!(j.singular_codims(), vec![2]);
    for c in j.stratum_components(2).unwrap() {
        assert_eq!(link_betti(&j, c.base), vec![1, 1]);
    }
    let c = cone(&s1).unwrap();
    assert_eq!(c.dim(), 2);
    let ball = cone(&example("s2").unwrap()).unwrap();
    assert_eq!(ball.f_vector(), vec![5, 10, 10, 4]);
    assert_eq!(betti(&all_simplices(&ball)), vec![1, 0, 0, 0]);
    assert!(matches!(ball.validate(), Err(Error::NotPseudomanifold { cofaces: 1, .. })));
    let t = product(&s1, &s1).unwrap();
    assert_eq!(betti(&all_simplices(&t)), vec![1, 2, 1]);
    assert_eq!(t.euler_characteristic(), 0);
}

#[test]
fn json_round_trip_preserves_the_stratification() {
    for name in ["susp_t2", "t2", "susp_s1xs3"] {
        let x = example(name).unwrap();
        let y = parse_space(&x.to_json()).unwrap();
        assert_eq!(y.name(), x.name());
        assert_eq!(y.len(), x.len());
        for s in 0..x.len() {
            assert_eq!(x.simplex(s), y.simplex(s));
            assert_eq!(x.level(s), y.level(s));
        }
    }
}

fn doc(maximal: &str, filtration: &str) -> String {
    format!(r#"{{"name": "t", "vertices": ["a", "b", "c", "d", "e"], "maximal_simplices": {maximal}, "filtration": {filtration}}}"#)
}

#[test]
fn malformed_documents_are_rejected() {
    let tri = r#"[["a","b","c"],["a","b","d"],["a","c","d"],["b","c","d"]]"#;
    assert!(parse_space(&doc(tri, "{}")).is_ok());
    assert!(matches!(parse_space(&doc(r#"[["a","b","z"]]"#, "{}")), Err(Error::UnknownVertex(v)) if v == "z"));
    let fin = r#"[["a","b","c"],["a","b","d"],["a","b","e"]]"#;
    assert!(matches!(parse_space(&doc(fin, "{}")), Err(Error::NotPseudomanifold { .. })));
    assert!(matches!(parse_space(&doc(tri, r#"{"1": [["a","b"]]}"#)), Err(Error::CodimensionOneStratum)));
    assert!(matches!(parse_space(&doc(tri, r#"{"0": [["a","b"]]}"#)), Err(Error::FiltrationDimension { .. })));
    assert!(matches!(
        parse_space(r#"{"name": "t", "vertices": ["a", "a"], "maximal_simplices": [["a"]]}"#),
        Err(Error::Malformed(_))
    ));
    assert!(matches!(parse_space(r#"{"name": "t", "vertices": [], "maximal_simplices": [], "extra": 1}"#), Err(Error::Malformed(_))));
}

#[test]
fn wedge_point_is_singular_when_declared() {
    let base = r#""name": "wedge", "vertices": ["p", "a", "b", "c", "x", "y", "z"],
        "maximal_simplices": [["p","a","b"],["p","a","c"],["p","b","c"],["a","b","c"],
                              ["p","x","y"],["p","x","z"],["p","y","z"],["x","y","z"]]"#;
    let x = parse_space(&format!(r#"{{{base}, "filtration": {{"0": [["p"]]}}}}"#)).unwrap();
    let p = x.id_of_names(&["p"]).unwrap();
    assert!(!x.is_regular(p));
    assert_eq!(x.codim(p), 2);
    assert_eq!(link_betti(&x, p), vec![2, 2]);
    // only combinatorial conditions are checked: the same space with an empty
    // singular set is accepted
    let y: StratifiedComplex = parse_space(&format!("{{{base}}}")).unwrap();
    assert!(y.singular_codims().is_empty());
}

#[test]
fn suspension_f_vector_identity() {
    for name in ["t2", "cp2", "s2xs2"] {
        let z = example(name).unwrap();
        let f = z.f_vector();
        let g = suspension(&z).unwrap().f_vector();
        assert_eq!(g.len(), f.len() + 1);
        for j in 0..g.len() {
            let prev = if j == 0 { 1 } else { f[j - 1] };
            assert_eq!(g[j], f.get(j).copied().unwrap_or(0) + 2 * prev, "{name} f_{j}");
        }
    }
    assert_eq!(example("susp_t2").unwrap().f_vector(), vec![9, 35, 56, 28]);
}
