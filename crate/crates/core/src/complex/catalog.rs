use super::{product, suspension, StratifiedComplex};

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> StratifiedComplex,
}

impl CatalogEntry {
    pub fn build(&self) -> StratifiedComplex {
        (self.build)().with_name(self.name)
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn manifold(name: &str, nverts: usize, maximal: &[Vec<usize>]) -> StratifiedComplex {
    let n = maximal[0].len() - 1;
    StratifiedComplex::from_levels(name, numbered(nverts), maximal, |_| n).expect("catalog space")
}

/// Boundary of the `(k+1)`-simplex.
pub fn sphere(k: usize) -> StratifiedComplex {
    let maximal: Vec<Vec<usize>> = (0..k + 2).map(|skip| (0..k + 2).filter(|&v| v != skip).collect()).collect();
    manifold(&format!("s{k}"), k + 2, &maximal)
}

/// Möbius' 7-vertex torus.
pub fn torus7() -> StratifiedComplex {
    let mut maximal = Vec::new();
    for i in 0..7 {
        maximal.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        maximal.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    manifold("t2", 7, &maximal)
}

const CP2_FACETS: [[usize; 5]; 36] = [
    [0, 1, 2, 3, 4],
    [0, 1, 2, 3, 5],
    [0, 1, 2, 4, 5],
    [0, 1, 3, 4, 6],
    [0, 1, 3, 5, 7],
    [0, 1, 3, 6, 7],
    [0, 1, 4, 5, 6],
    [0, 1, 5, 6, 8],
    [0, 1, 5, 7, 8],
    [0, 1, 6, 7, 8],
    [0, 2, 3, 4, 8],
    [0, 2, 3, 5, 7],
    [0, 2, 3, 6, 7],
    [0, 2, 3, 6, 8],
    [0, 2, 4, 5, 7],
    [0, 2, 4, 7, 8],
    [0, 2, 6, 7, 8],
    [0, 3, 4, 6, 8],
    [0, 4, 5, 6, 8],
    [0, 4, 5, 7, 8],
    [1, 2, 3, 4, 8],
    [1, 2, 3, 5, 8],
    [1, 2, 4, 5, 6],
    [1, 2, 4, 6, 7],
    [1, 2, 4, 7, 8],
    [1, 2, 5, 6, 8],
    [1, 2, 6, 7, 8],
    [1, 3, 4, 6, 7],
    [1, 3, 4, 7, 8],
    [1, 3, 5, 7, 8],
    [2, 3, 5, 6, 7],
    [2, 3, 5, 6, 8],
    [2, 4, 5, 6, 7],
    [3, 4, 5, 6, 7],
    [3, 4, 5, 6, 8],
    [3, 4, 5, 7, 8],
];

/// A 9-vertex triangulation of the complex projective plane.
pub fn cp2_9() -> StratifiedComplex {
    let maximal: Vec<Vec<usize>> = CP2_FACETS.iter().map(|f| f.to_vec()).collect();
    manifold("cp2", 9, &maximal)
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry { name: "s1", description: "boundary of the 2-simplex", build: || sphere(1) },
        CatalogEntry { name: "s2", description: "boundary of the 3-simplex", build: || sphere(2) },
        CatalogEntry { name: "s3", description: "boundary of the 4-simplex", build: || sphere(3) },
        CatalogEntry { name: "s4", description: "boundary of the 5-simplex", build: || sphere(4) },
        CatalogEntry { name: "t2", description: "7-vertex torus", build: torus7 },
        CatalogEntry { name: "cp2", description: "9-vertex complex projective plane", build: cp2_9 },
        CatalogEntry {
            name: "s1xs3",
            description: "staircase product of the boundaries of the 2- and 4-simplex",
            build: || product(&sphere(1), &sphere(3)).unwrap(),
        },
        CatalogEntry {
            name: "s2xs2",
            description: "staircase product of two boundaries of the 3-simplex",
            build: || product(&sphere(2), &sphere(2)).unwrap(),
        },
        CatalogEntry { name: "susp_s2", description: "suspension of s2", build: || suspension(&sphere(2)).unwrap() },
        CatalogEntry { name: "susp_t2", description: "suspension of the 7-vertex torus", build: || suspension(&torus7()).unwrap() },
        CatalogEntry { name: "susp_cp2", description: "suspension of the 9-vertex CP2", build: || suspension(&cp2_9()).unwrap() },
        CatalogEntry {
            name: "susp_s1xs3",
            description: "suspension of s1xs3",
            build: || suspension(&product(&sphere(1), &sphere(3)).unwrap()).unwrap(),
        },
        CatalogEntry {
            name: "susp_s2xs2",
            description: "suspension of s2xs2",
            build: || suspension(&product(&sphere(2), &sphere(2)).unwrap()).unwrap(),
        },
    ]
}

pub fn example(name: &str) -> Option<StratifiedComplex> {
    catalog().into_iter().find(|e| e.name == name).map(|e| e.build())
}
