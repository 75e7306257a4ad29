use super::StratifiedComplex;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Suspension,
    Cone,
    Join,
    Product,
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Level of the empty face of a factor inside a join: a factor of
/// dimension 0 contributes a codimension-one direction, which must be regular.
fn empty_level(x: &StratifiedComplex) -> isize {
    if x.dim() == 0 {
        0
    } else {
        -1
    }
}

/// Join `A * B`; vertices of `A` precede those of `B`.
/// `level(a*b) = level(a) + level(b) + 1`, with the empty face counted as
/// described in [`empty_level`].
pub fn join(a: &StratifiedComplex, b: &StratifiedComplex) -> Result<StratifiedComplex> {
    let na = a.vertices().len();
    let mut names = a.vertices().to_vec();
    for v in b.vertices() {
        let n = fresh_name(&names, v);
        names.push(n);
    }
    let mut maximal = Vec::new();
    for s in a.facets_top() {
        for t in b.facets_top() {
            let mut m = a.simplex(s).to_vec();
            m.extend(b.simplex(t).iter().map(|&v| v + na));
            maximal.push(m);
        }
    }
    let (ea, eb) = (empty_level(a), empty_level(b));
    let level = |s: &[usize]| {
        let (sa, sb): (Vec<usize>, Vec<usize>) = s.iter().partition(|&&v| v < na);
        let sb: Vec<usize> = sb.iter().map(|&v| v - na).collect();
        let la = if sa.is_empty() { ea } else { a.level(a.id_of(&sa).unwrap()) as isize };
        let lb = if sb.is_empty() { eb } else { b.level(b.id_of(&sb).unwrap()) as isize };
        (la + lb + 1) as usize
    };
    let name = format!("{}*{}", a.name(), b.name());
    StratifiedComplex::from_levels(&name, names, &maximal, level)
}

fn points(names: &[&str]) -> StratifiedComplex {
    let maximal: Vec<Vec<usize>> = (0..names.len()).map(|i| vec![i]).collect();
    StratifiedComplex::from_levels("pts", names.iter().map(|s| s.to_string()).collect(), &maximal, |_| 0).expect("points")
}

/// Suspension with two new poles forming `X_0`, placed last in the vertex order.
pub fn suspension(z: &StratifiedComplex) -> Result<StratifiedComplex> {
    z.validate_pure()?;
    let n = fresh_name(z.vertices(), "n");
    let s = fresh_name(z.vertices(), "s");
    let poles = points(&[&n, &s]);
    Ok(join(z, &poles)?.with_name(&format!("susp_{}", z.name())))
}

/// Cone with the apex in `X_0`, placed last in the vertex order.
pub fn cone(z: &StratifiedComplex) -> Result<StratifiedComplex> {
    z.validate_pure()?;
    let c = fresh_name(z.vertices(), "c");
    Ok(join(z, &points(&[&c]))?.with_name(&format!("cone_{}", z.name())))
}

/// Product with the staircase triangulation of each product of simplices.
/// Vertices are pairs in lexicographic order; the level of a simplex is the
/// sum of the levels of its two projections.
pub fn product(a: &StratifiedComplex, b: &StratifiedComplex) -> Result<StratifiedComplex> {
    a.validate_pure()?;
    b.validate_pure()?;
    let nb = b.vertices().len();
    let mut names = Vec::new();
    for u in a.vertices() {
        for v in b.vertices() {
            names.push(format!("({u},{v})"));
        }
    }
    let pair = |i: usize, j: usize| i * nb + j;
    let mut maximal = Vec::new();
    for s in a.facets_top() {
        for t in b.facets_top() {
            let (sv, tv) = (a.simplex(s), b.simplex(t));
            for path in staircases(sv.len() - 1, tv.len() - 1) {
                maximal.push(path.iter().map(|&(i, j)| pair(sv[i], tv[j])).collect());
            }
        }
    }
    let level = |s: &[usize]| {
        let mut pa: Vec<usize> = s.iter().map(|&v| v / nb).collect();
        let mut pb: Vec<usize> = s.iter().map(|&v| v % nb).collect();
        pa.dedup();
        pb.sort_unstable();
        pb.dedup();
        a.level(a.id_of(&pa).unwrap()) + b.level(b.id_of(&pb).unwrap())
    };
    StratifiedComplex::from_levels(&format!("{}x{}", a.name(), b.name()), names, &maximal, level)
}

/// Monotone lattice paths from `(0,0)` to `(p,q)`.
fn staircases(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur = vec![(0, 0)];
    fn rec(i: usize, j: usize, p: usize, q: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == p && j == q {
            out.push(cur.clone());
            return;
        }
        if i < p {
            cur.push((i + 1, j));
            rec(i + 1, j, p, q, cur, out);
            cur.pop();
        }
        if j < q {
            cur.push((i, j + 1));
            rec(i, j + 1, p, q, cur, out);
            cur.pop();
        }
    }
    rec(0, 0, p, q, &mut cur, &mut out);
    out
}
